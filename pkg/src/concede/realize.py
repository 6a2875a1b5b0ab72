"""Surface realization of sentence plans, and the end-to-end pipeline.

Clause-internal grammar is not generated: every proposition brings its
clause variants pre-rendered per language.  A ``|`` inside a clause form
marks the boundary after the first constituent, where sentence adverbs and
the first half of a split particle go; without it the boundary is taken to
follow the first word.  The optional ``inverted`` variant is the verb-first
main clause German needs after a fronted constituent.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

from concede.discourse import (DiscourseTree, build_tree,
                               check_relation_constraints, tree_to_notation)
from concede.errors import (ConcedeError, MissingClauseForm, NoCandidate,
                            PipelineError)
from concede.knowledge import (ConcessionKind, ConcessionSituation,
                               classify_concession, concession_kind,
                               validate_situation)
from concede.lexicon import (DETERMINISTIC, Lexicon, MarkerEntry, MarkerGroup,
                             Placement, Seeded, load_lexicon, rank_and_pick,
                             select_candidates)
from concede.linearize import Role, Segment, SentencePlan, StyleParams, Taxis, linearize
from concede.network import Network, load_networks, traverse_network

Policy = Union[str, Seeded]

CAUSAL = {"en": "because", "de": "weil"}
CAUSAL_SENTENCE = {"en": "that is because", "de": "das liegt daran, dass"}
BOUNDARY = "|"


def _squash(text: str) -> str:
    return re.sub(r"\s+", " ", text).strip()


def plain(text: str) -> str:
    return _squash(text.replace(BOUNDARY, " "))


def insert_at_boundary(text: str, word: str) -> str:
    if BOUNDARY in text:
        left, right = text.split(BOUNDARY, 1)
        return _squash(f"{left} {word} {right}")
    first, _, rest = text.strip().partition(" ")
    return _squash(f"{first} {word} {rest}")


def capitalize(text: str) -> str:
    return text[:1].upper() + text[1:]


def clause(situation: ConcessionSituation, prop_id: str, language: str,
           variant: str) -> str:
    prop = situation.get(prop_id)
    text = prop.form(language, variant) if prop is not None else None
    if not text and variant == "inverted":
        text = prop.form(language, "declarative_main") if prop is not None else None
    if not text:
        raise MissingClauseForm(prop_id, language, variant)
    return text


def _preferences(style: StyleParams, hard: frozenset) -> tuple[frozenset, frozenset]:
    soft, forbidden = set(), {"dialogic", "archaic", "legalistic", "substitutive"}
    if style.formality == "formal":
        soft.add("formal")
    else:
        forbidden.add("formal")
    if style.formality == "informal":
        soft.add("informal")
    else:
        forbidden.add("informal")
    if style.register == "spoken":
        soft.add("colloquial")
    elif style.formality != "informal":
        forbidden.add("colloquial")
    if style.intensify:
        soft.add("intensified")
    else:
        forbidden.add("intensified")
    if style.conditional:
        soft.add("conditional")
    else:
        forbidden.add("conditional")
    return frozenset(soft - forbidden), frozenset(forbidden - hard)


def choose_marker(lexicon: Lexicon, language: str, group: MarkerGroup,
                  style: StyleParams, hard: Iterable[str] = (),
                  policy: Policy = DETERMINISTIC, salt: str = "") -> MarkerEntry:
    """Pick a marker of ``group``: style preferences first, then relaxed."""
    hard = frozenset(hard)
    soft, forbidden = _preferences(style, hard)
    try:
        candidates = select_candidates(lexicon, language, group, hard | soft, forbidden)
    except NoCandidate:
        candidates = select_candidates(lexicon, language, group, hard, forbidden)
    if isinstance(policy, Seeded):
        policy = Seeded(policy.seed, f"{policy.salt}{salt}:{language}:{group.value}")
    return rank_and_pick(candidates, policy)


def _first_available(lexicon, language, groups, style, hard_for, policy, salt):
    last = None
    for group in groups:
        try:
            return choose_marker(lexicon, language, group, style,
                                 hard_for(group), policy, salt), group
        except NoCandidate as exc:
            last = exc
    raise last or NoCandidate(f"plan allows no marker group for {language!r}")


@dataclass(frozen=True)
class _Context:
    situation: ConcessionSituation
    lexicon: Lexicon
    language: str
    style: StyleParams
    policy: Policy
    networks: Optional[Mapping[str, Network]]
    salt: str


def realize_plan(plan: SentencePlan, situation: ConcessionSituation,
                 lexicon: Lexicon, language: str, style: StyleParams,
                 policy: Policy = DETERMINISTIC,
                 networks: Optional[Mapping[str, Network]] = None,
                 salt: str = "") -> str:
    ctx = _Context(situation, lexicon, language, style, policy, networks, salt)
    segs = plan.segments
    if not plan.marker_constraint:
        if len(segs) == 1 and segs[0].role in (Role.CAUSE, Role.EVIDENCE):
            body = _causal_sentence(ctx, segs[0])
        elif len(segs) == 1:
            body = plain(clause(situation, segs[0].prop, language, segs[0].variant))
        else:
            raise ValueError("two-segment plan without a concessive link")
        body = _with_cause(ctx, body, plan)
    elif len(segs) == 1:
        body = _with_cause(ctx, _cohesive(ctx, plan, segs[0]), plan)
    elif plan.taxis is Taxis.PARATACTIC:
        body = _with_cause(ctx, _paratactic(ctx, plan), plan)
    elif plan.taxis is Taxis.HYPOTACTIC:
        body = _hypotactic(ctx, plan)
    else:
        raise ValueError(f"cannot realize {plan.taxis.value} plan with {len(segs)} segments")
    return capitalize(body) + ("!" if plan.exclamatory else ".")


def _cause_clause(ctx, seg):
    text = clause(ctx.situation, seg.prop, ctx.language, "subordinate")
    return f"{CAUSAL[ctx.language]} {plain(text)}"


def _with_cause(ctx, body, plan):
    if plan.causal_link is None:
        return body
    return f"{body}, {_cause_clause(ctx, plan.causal_link)}"


def _causal_sentence(ctx, seg):
    text = clause(ctx.situation, seg.prop, ctx.language, "subordinate")
    return f"{CAUSAL_SENTENCE[ctx.language]} {plain(text)}"


def _cohesive(ctx, plan, seg):
    entry, group = _first_available(
        ctx.lexicon, ctx.language, plan.marker_constraint, ctx.style,
        lambda g: (), ctx.policy, ctx.salt)
    if group is MarkerGroup.COORDINATING_CONJUNCTION:
        return f"{entry.lemma} {plain(clause(ctx.situation, seg.prop, ctx.language, seg.variant))}"
    return _place_adjunct(ctx, entry, seg.prop, initial_ok=ctx.style.emphasis)


def _place_adjunct(ctx, entry, prop, initial_ok=False, variant="declarative_main"):
    lang = ctx.language
    placement = entry.placement
    if placement is Placement.CLAUSE_SECOND_OR_LATER and initial_ok and lang == "en":
        placement = Placement.CLAUSE_INITIAL
    if placement is Placement.CLAUSE_INITIAL:
        if lang == "de":
            return f"{entry.lemma} {plain(clause(ctx.situation, prop, lang, 'inverted'))}"
        return f"{entry.lemma}, {plain(clause(ctx.situation, prop, lang, variant))}"
    text = clause(ctx.situation, prop, lang, variant)
    if placement is Placement.CLAUSE_FINAL:
        return f"{plain(text)}, {entry.lemma}"
    return insert_at_boundary(text, entry.lemma)


def _paratactic(ctx, plan):
    first, second = plan.segments
    substitution = concession_kind(ctx.situation) is ConcessionKind.SUBSTITUTION
    hard_for = (lambda g: {"substitutive"} if substitution and g is MarkerGroup.SPLIT_PARTICLE
                else ())
    entry, group = _first_available(ctx.lexicon, ctx.language, plan.marker_constraint,
                                    ctx.style, hard_for, ctx.policy, ctx.salt)
    left = clause(ctx.situation, first.prop, ctx.language, first.variant)
    right = plain(clause(ctx.situation, second.prop, ctx.language, second.variant))
    if group is MarkerGroup.SPLIT_PARTICLE:
        opener, closer = entry.parts
        return f"{insert_at_boundary(left, opener)}, {closer} {right}"
    return f"{plain(left)}, {entry.lemma} {right}"


def _hypotactic(ctx, plan):
    lang, sit = ctx.language, ctx.situation
    if plan.theme_override is None:
        sat, nuc = plan.segments
    else:
        nuc, sat = plan.segments
    nominal = sat.variant == "nominal"
    selection = None
    if nominal:
        marker = choose_marker(ctx.lexicon, lang, MarkerGroup.PREPOSITION, ctx.style,
                               policy=ctx.policy, salt=ctx.salt).lemma
    else:
        selection = traverse_network(lang, {
            "kind": concession_kind(sit),
            "thematic_N": plan.theme_override is not None,
            "conditional": ctx.style.conditional,
            "intensify": ctx.style.intensify,
            "formality": ctx.style.formality,
            "emphasis": ctx.style.emphasis,
        }, ctx.networks)
        marker = _network_marker(ctx, selection)
    sat_text = f"{marker} {plain(clause(sit, sat.prop, lang, sat.variant))}"

    slot = None
    if plan.conjunctive_slot:
        slot = choose_marker(ctx.lexicon, lang, MarkerGroup.CONJUNCTIVE_ADJUNCT,
                             ctx.style, hard={"intensified"}, policy=ctx.policy,
                             salt=ctx.salt + ":slot")

    if plan.theme_override is None:
        variant = "inverted" if lang == "de" else "declarative_main"
        nuc_text = clause(sit, nuc.prop, lang, variant)
        nuc_text = insert_at_boundary(nuc_text, slot.lemma) if slot else plain(nuc_text)
        sep = " " if nominal and lang == "de" else ", "
        return _with_cause(ctx, f"{sat_text}{sep}{nuc_text}", plan)

    nuc_text = clause(sit, nuc.prop, lang, "declarative_main")
    nuc_text = insert_at_boundary(nuc_text, slot.lemma) if slot else plain(nuc_text)
    nuc_text = _with_cause(ctx, nuc_text, plan)
    if selection is not None and selection.prefix:
        if selection.prefix_boundary == "sentence":
            return f"{nuc_text}. {capitalize(selection.prefix)} {sat_text}"
        return f"{nuc_text}, {selection.prefix}, {sat_text}"
    if nominal:
        return f"{nuc_text} {sat_text}"
    return f"{nuc_text}, {sat_text}"


def _network_marker(ctx, selection):
    if selection.delegate is not None:
        raise NoCandidate(f"network delegates to {selection.delegate.value}; "
                          f"a hypotactic plan cannot realize it")
    entries = [ctx.lexicon.find(lemma, ctx.language, MarkerGroup.SUBORDINATING_CONJUNCTION)
               for lemma in selection.markers]
    entries = [e for e in entries if e is not None]
    if not entries:
        raise NoCandidate(f"network markers {list(selection.markers)} are not in "
                          f"the {ctx.language!r} lexicon")
    policy = ctx.policy
    if isinstance(policy, Seeded):
        policy = Seeded(policy.seed, f"{policy.salt}{ctx.salt}:{ctx.language}:network")
    return rank_and_pick(entries, policy).lemma


@dataclass(frozen=True)
class Generation:
    tree: DiscourseTree
    plans: tuple[SentencePlan, ...]
    sentences: dict[str, list[str]]

    @property
    def notation(self) -> str:
        return tree_to_notation(self.tree)


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except PipelineError:
        raise
    except (ConcedeError, ValueError) as exc:
        raise PipelineError(name, exc) from exc


def generate(scenario, languages: Iterable[str] = ("en", "de"),
             style: Optional[StyleParams] = None, *,
             lexicon: Optional[Lexicon] = None,
             networks: Optional[Mapping[str, Network]] = None,
             policy: Policy = DETERMINISTIC) -> Generation:
    """Run the whole pipeline on a scenario.

    Stages: validate, classify, build_tree, check_constraints, linearize,
    realize.  Failures surface as PipelineError naming the stage.
    """
    languages = tuple(languages)
    style = style or scenario.style
    situation, goals = scenario.situation, scenario.goals
    lexicon = lexicon if lexicon is not None else load_lexicon()

    report = validate_situation(situation, languages)
    if report:
        raise PipelineError("validate", report)
    cls = _stage("classify", classify_concession, goals, situation)
    tree = _stage("build_tree", build_tree, goals, situation, cls)
    report = check_relation_constraints(tree, situation)
    if report:
        raise PipelineError("check_constraints", report)
    plans = tuple(_stage("linearize", linearize, tree, style, situation))
    sentences = {}
    for lang in languages:
        sentences[lang] = [
            _stage("realize", realize_plan, plan, situation, lexicon, lang, style,
                   policy, networks, f"plan{i}")
            for i, plan in enumerate(plans)]
    return Generation(tree, plans, sentences)


def realize_scenario(scenario, language: str, style: Optional[StyleParams] = None,
                     **kwargs) -> list[str]:
    return generate(scenario, (language,), style, **kwargs).sentences[language]
