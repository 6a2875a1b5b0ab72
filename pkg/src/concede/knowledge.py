"""Belief and goal representation of a concession, and its classification.

A concession situation always follows the same scheme: a fact A that by
default implies C, and a fact B that in the present context implies the
opposite, Not-C.  Which parts get verbalized, and which communicative goals
the speaker pursues, decide how the concession is realized later on.

Propositions and rules are referred to by short symbols throughout the
package: ``"A"``, ``"B"``, ``"C"``, ``"NOT-C"`` for propositions and
``"A->C"``, ``"B->NOT-C"`` for rules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Optional

from concede.errors import UnmappableGoalConfig

SYMBOLS = ("A", "B", "C")

CLAUSE_VARIANTS = ("declarative_main", "inverted", "subordinate", "nominal",
                   "elliptical")


class Polarity(str, Enum):
    POSITIVE = "positive"
    NEGATED = "negated"


class Strength(str, Enum):
    DEFAULT = "default"
    CONTEXT_SPECIFIC = "context-specific"


class ActKind(str, Enum):
    INFORM = "INFORM"
    CONVINCE = "CONVINCE"
    ACTIVATE = "ACTIVATE"


class ConcessionClass(str, Enum):
    CONCEDE_I = "ConcedeI"
    CONCEDE_II = "ConcedeII"
    CONCEDE_III = "ConcedeIII"


class ConcessionKind(str, Enum):
    VIOLATED_IMPLICATION = "ViolatedImplication"
    SUBSTITUTION = "Substitution"


def literal(prop_id: str, polarity: Polarity = Polarity.POSITIVE) -> str:
    return f"NOT-{prop_id}" if polarity is Polarity.NEGATED else prop_id


def split_literal(ref: str) -> tuple[str, Polarity]:
    if ref.startswith("NOT-"):
        return ref[4:], Polarity.NEGATED
    return ref, Polarity.POSITIVE


def is_rule_ref(ref: str) -> bool:
    return "->" in ref


@dataclass(frozen=True)
class Proposition:
    """One of the scheme's propositions together with its surface material.

    ``clause_forms`` maps a language code to a mapping from clause variant
    (see ``CLAUSE_VARIANTS``) to pre-rendered text.  ``weight`` counts the
    elementary propositions folded into this clause; anything heavier than
    the style's complexity threshold is treated as complex.
    """

    id: str
    polarity: Polarity = Polarity.POSITIVE
    clause_forms: Mapping[str, Mapping[str, str]] = field(default_factory=dict)
    verbalized: bool = True
    unrealized_action: bool = False
    weight: int = 1

    @property
    def ref(self) -> str:
        return literal(self.id, self.polarity)

    def form(self, language: str, variant: str) -> Optional[str]:
        return self.clause_forms.get(language, {}).get(variant)

    def has_form(self, language: str, variant: str) -> bool:
        return bool(self.form(language, variant))


@dataclass(frozen=True)
class DefaultRule:
    antecedent: str
    consequent: str
    consequent_polarity: Polarity
    strength: Strength

    @property
    def ref(self) -> str:
        return f"{self.antecedent}->{literal(self.consequent, self.consequent_polarity)}"


@dataclass(frozen=True)
class ConcessionSituation:
    propositions: tuple[Proposition, ...]
    rules: tuple[DefaultRule, ...]

    def get(self, prop_id: str) -> Optional[Proposition]:
        for prop in self.propositions:
            if prop.id == prop_id:
                return prop
        return None

    def verbalized(self, prop_id: str) -> bool:
        prop = self.get(prop_id)
        return prop is not None and prop.verbalized

    @property
    def languages(self) -> tuple[str, ...]:
        langs = set()
        for prop in self.propositions:
            if prop.verbalized:
                langs.update(lang for lang, forms in prop.clause_forms.items()
                             if forms)
        return tuple(sorted(langs))

    def rule_from(self, antecedent: str) -> Optional[DefaultRule]:
        for rule in self.rules:
            if rule.antecedent == antecedent:
                return rule
        return None


@dataclass(frozen=True)
class CommunicativeAct:
    kind: ActKind
    content: str


@dataclass(frozen=True)
class GoalConfig:
    main_act: CommunicativeAct
    minor_acts: tuple[CommunicativeAct, ...] = ()
    presuppositions: frozenset[str] = frozenset()


@dataclass(frozen=True)
class Problem:
    code: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    problems: tuple[Problem, ...] = ()

    def __bool__(self):
        return bool(self.problems)

    def __len__(self):
        return len(self.problems)

    def __iter__(self):
        return iter(self.problems)

    @property
    def codes(self) -> set[str]:
        return {p.code for p in self.problems}

    def __str__(self):
        return "; ".join(f"{p.code}: {p.message}" for p in self.problems)


def validate_situation(situation: ConcessionSituation,
                       languages: Optional[Iterable[str]] = None) -> ValidationReport:
    """Report every structural problem of ``situation``; never raises.

    Clause forms are checked for ``languages``, or for every language that
    occurs anywhere in the situation when none are given.
    """
    problems: list[Problem] = []

    def report(code, message):
        problems.append(Problem(code, message))

    seen = set()
    for prop in situation.propositions:
        if prop.id in seen:
            report("duplicate-id", f"proposition {prop.id} declared twice")
        seen.add(prop.id)
        if prop.id not in SYMBOLS:
            report("unknown-id", f"proposition id {prop.id!r} is not one of A, B, C")
        if prop.weight < 1:
            report("weight", f"proposition {prop.id} has weight {prop.weight} < 1")

    a, b, c = (situation.get(s) for s in SYMBOLS)
    if a is None:
        report("missing-A", "proposition A is required")
    elif not a.verbalized:
        report("A-unverbalized", "proposition A must be verbalized")
    if c is None:
        report("missing-C", "proposition C (the common ground) must be declared")
    for prop, expected in ((a, Polarity.POSITIVE), (b, Polarity.POSITIVE),
                           (c, Polarity.NEGATED)):
        if prop is not None and prop.polarity is not expected:
            report("polarity", f"proposition {prop.id} must be asserted "
                               f"{expected.value}")

    _check_rules(situation.rules, report)

    if a is not None and a.verbalized:
        if not (b is not None and b.verbalized) and not (c is not None and c.verbalized):
            report("no-contrast", "neither B nor C is verbalized; A has "
                                  "nothing to be contrasted with")

    langs = tuple(languages) if languages is not None else situation.languages
    if not langs:
        report("clause-form", "no clause forms in any language")
    for prop in situation.propositions:
        if not prop.verbalized:
            continue
        for lang in langs:
            if not prop.has_form(lang, "declarative_main"):
                report("clause-form", f"proposition {prop.id} lacks a "
                                      f"declarative_main form for {lang!r}")
    return ValidationReport(tuple(problems))


def _check_rules(rules, report):
    if len(rules) != 2:
        report("rule-count", f"expected exactly two rules, found {len(rules)}")
    default = [r for r in rules if r.strength is Strength.DEFAULT]
    context = [r for r in rules if r.strength is Strength.CONTEXT_SPECIFIC]
    if len(default) != 1 or default[0].antecedent != "A":
        report("default-rule", "need exactly one default rule with antecedent A")
    elif default[0].consequent_polarity is not Polarity.POSITIVE:
        report("default-rule", "the default rule must imply C, not Not-C")
    if len(context) != 1 or context[0].antecedent != "B":
        report("context-rule", "need exactly one context-specific rule with "
                               "antecedent B")
    elif context[0].consequent_polarity is not Polarity.NEGATED:
        report("context-rule", "the context-specific rule must imply Not-C")
    if len(rules) == 2:
        first, second = rules
        if (first.consequent != second.consequent
                or first.consequent != "C"
                or first.consequent_polarity is second.consequent_polarity):
            report("common-ground",
                   f"rules {first.ref} and {second.ref} do not share the "
                   f"consequent C with opposite polarity")


def concession_kind(situation: ConcessionSituation) -> ConcessionKind:
    if situation.verbalized("B") and not situation.verbalized("C"):
        return ConcessionKind.SUBSTITUTION
    return ConcessionKind.VIOLATED_IMPLICATION


@dataclass(frozen=True)
class GoalSchema:
    """One row of the goal table: an act/presupposition pattern and its tree.

    Minor acts are all INFORM acts; their contents must include every symbol
    of ``minor_required`` and may add symbols from ``minor_optional``.
    ``tree`` is the discourse tree template in bracket notation.
    """

    row: str
    concession_class: ConcessionClass
    main_kind: ActKind
    main_content: str
    minor_required: frozenset[str]
    presup_required: frozenset[str]
    tree: str
    minor_optional: frozenset[str] = frozenset()
    presup_forbidden: frozenset[str] = frozenset()

    def matches(self, goals: GoalConfig) -> bool:
        if goals.main_act.kind is not self.main_kind:
            return False
        if goals.main_act.content != self.main_content:
            return False
        if any(act.kind is not ActKind.INFORM for act in goals.minor_acts):
            return False
        contents = [act.content for act in goals.minor_acts]
        if len(set(contents)) != len(contents):
            return False
        minor = set(contents)
        if not self.minor_required <= minor <= self.minor_required | self.minor_optional:
            return False
        presup = goals.presuppositions
        return self.presup_required <= presup and not presup & self.presup_forbidden


def _schema(row, cls, kind, main, minor, presup, tree, **kw):
    return GoalSchema(row, cls, kind, main, frozenset(minor), frozenset(presup),
                      tree, **{k: frozenset(v) for k, v in kw.items()})


GOAL_SCHEMAS: tuple[GoalSchema, ...] = (
    _schema("i", ConcessionClass.CONCEDE_I, ActKind.CONVINCE, "NOT-C", {"B"},
            {"A", "A->C"}, "(CONCESSION (EVIDENCE NOT-C B) A)"),
    _schema("ii", ConcessionClass.CONCEDE_I, ActKind.ACTIVATE, "NOT-C", {"B"},
            {"A", "A->C"}, "(CONCESSION (MOTIVATION NOT-C B) A)"),
    # the conceded fact is new to the discourse: A must not be presupposed
    _schema("iii", ConcessionClass.CONCEDE_II, ActKind.INFORM, "A", {"B"},
            {"A->C"}, "(CONCESSION A (EVIDENCE NOT-C B))",
            minor_optional={"B->NOT-C", "NOT-C"}, presup_forbidden={"A"}),
    _schema("iv", ConcessionClass.CONCEDE_III, ActKind.INFORM, "NOT-C", {"A"},
            {"A->C"}, "(EXT-CONCESSION NOT-C A)"),
    _schema("v", ConcessionClass.CONCEDE_III, ActKind.INFORM, "NOT-C", {"A", "B"},
            {"A->C"}, "(EXT-CONCESSION (CAUSE NOT-C B) A)"),
)


def match_schema(goals: GoalConfig, situation: ConcessionSituation,
                 schemas: Iterable[GoalSchema] = GOAL_SCHEMAS) -> GoalSchema:
    """Return the unique schema row matching ``goals``.

    Raises UnmappableGoalConfig when no row (or more than one) matches, or
    when the acts refer to material the situation cannot provide.
    """
    _check_act_references(goals, situation)
    hits = [s for s in schemas if s.matches(goals)]
    if len(hits) != 1:
        why = "no goal schema" if not hits else "ambiguous goal schemas"
        raise UnmappableGoalConfig(
            f"{why} for main act {goals.main_act.kind.value}"
            f"({goals.main_act.content}), minor acts "
            f"{[a.content for a in goals.minor_acts]}, presuppositions "
            f"{sorted(goals.presuppositions)}")
    return hits[0]


def classify_concession(goals: GoalConfig,
                        situation: ConcessionSituation) -> ConcessionClass:
    return match_schema(goals, situation).concession_class


def _check_act_references(goals, situation):
    rule_refs = {r.ref for r in situation.rules}
    for ref in [goals.main_act.content, *(a.content for a in goals.minor_acts),
                *goals.presuppositions]:
        if is_rule_ref(ref):
            if ref not in rule_refs:
                raise UnmappableGoalConfig(f"unknown rule {ref}")
            continue
        prop = situation.get(split_literal(ref)[0])
        if prop is None:
            raise UnmappableGoalConfig(f"act or presupposition refers to "
                                       f"undeclared proposition {ref}")
    main = goals.main_act
    if main.kind is ActKind.ACTIVATE:
        prop = situation.get(split_literal(main.content)[0])
        if not prop.unrealized_action:
            raise UnmappableGoalConfig(
                f"ACTIVATE content {main.content} is not an unrealized action")
    for act in goals.minor_acts:
        if is_rule_ref(act.content):
            continue
        if not situation.verbalized(split_literal(act.content)[0]):
            raise UnmappableGoalConfig(
                f"minor act informs about unverbalized {act.content}")
