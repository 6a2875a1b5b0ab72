"""Rule-based generation of concessive sentences in English and German."""

from concede.discourse import (DiscourseTree, build_tree,
                               check_relation_constraints, tree_to_notation)
from concede.knowledge import (ConcessionClass, ConcessionKind,
                               ConcessionSituation, GoalConfig,
                               classify_concession, concession_kind,
                               validate_situation)
from concede.lexicon import (MarkerGroup, load_lexicon, rank_and_pick,
                             select_candidates)
from concede.linearize import SentencePlan, StyleParams, complexity, linearize
from concede.network import traverse_network
from concede.realize import generate, realize_plan, realize_scenario
from concede.scenario import Scenario, parse_scenario

__version__ = "0.1.0"
