"""RST-style discourse trees over the propositions of a concession.

Trees are written in bracket notation ``(RELATION NUCLEUS SATELLITE)`` with
leaves printed as proposition symbols, e.g.
``(CONCESSION (EVIDENCE NOT-C B) A)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional, Union

from concede.errors import ParseError, UnmappableGoalConfig
from concede.knowledge import (ConcessionClass, ConcessionKind,
                               ConcessionSituation, GoalConfig, Polarity,
                               Problem, ValidationReport, concession_kind,
                               literal, match_schema, split_literal)


class RelationLabel(str, Enum):
    RST_CONCESSION = "CONCESSION"
    EXT_CONCESSION = "EXT-CONCESSION"
    EVIDENCE = "EVIDENCE"
    MOTIVATION = "MOTIVATION"
    CAUSE = "CAUSE"

    @property
    def presentational(self) -> bool:
        return self in (RelationLabel.RST_CONCESSION, RelationLabel.EVIDENCE,
                        RelationLabel.MOTIVATION)

    @property
    def concessive(self) -> bool:
        return self in (RelationLabel.RST_CONCESSION, RelationLabel.EXT_CONCESSION)


@dataclass(frozen=True)
class Leaf:
    prop: str
    polarity: Polarity = Polarity.POSITIVE
    weight: int = 1

    @property
    def ref(self) -> str:
        return literal(self.prop, self.polarity)


@dataclass(frozen=True)
class Relation:
    label: RelationLabel
    nucleus: "DiscourseNode"
    satellite: "DiscourseNode"


DiscourseNode = Union[Leaf, Relation]


@dataclass(frozen=True)
class DiscourseTree:
    root: Relation
    concession_class: ConcessionClass
    kind: ConcessionKind

    def __post_init__(self):
        if not isinstance(self.root, Relation) or not self.root.label.concessive:
            raise TypeError("tree root must be a concessive relation")


def leaves(node: DiscourseNode) -> Iterator[Leaf]:
    if isinstance(node, Leaf):
        yield node
    else:
        yield from leaves(node.nucleus)
        yield from leaves(node.satellite)


def head(node: DiscourseNode) -> Leaf:
    """Follow nucleus links down to the most prominent leaf."""
    while isinstance(node, Relation):
        node = node.nucleus
    return node


_TOKEN = re.compile(r"\(|\)|[^\s()]+")


def parse_notation(text: str) -> DiscourseNode:
    """Parse bracket notation back into nodes (leaf weights default to 1)."""
    tokens = _TOKEN.findall(text)
    pos = 0

    def node():
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError(f"unexpected end of tree notation {text!r}")
        tok = tokens[pos]
        pos += 1
        if tok == ")":
            raise ParseError(f"unexpected ')' in {text!r}")
        if tok != "(":
            prop, polarity = split_literal(tok)
            return Leaf(prop, polarity)
        if pos >= len(tokens):
            raise ParseError(f"unexpected end of tree notation {text!r}")
        try:
            label = RelationLabel(tokens[pos])
        except ValueError:
            raise ParseError(f"unknown relation {tokens[pos]!r}") from None
        pos += 1
        nucleus, satellite = node(), node()
        if pos >= len(tokens) or tokens[pos] != ")":
            raise ParseError(f"relation {label.value} needs exactly two children")
        pos += 1
        return Relation(label, nucleus, satellite)

    result = node()
    if pos != len(tokens):
        raise ParseError(f"trailing material in tree notation {text!r}")
    return result


def _instantiate(node: DiscourseNode,
                 situation: ConcessionSituation) -> Optional[DiscourseNode]:
    """Attach weights to template leaves and drop unverbalized ones.

    In a substitution the common ground C stays implicit, so a relation whose
    nucleus is Not-C collapses onto its satellite (B takes over Not-C's place).
    """
    if isinstance(node, Leaf):
        prop = situation.get(node.prop)
        if prop is None or not prop.verbalized:
            return None
        return Leaf(node.prop, node.polarity, prop.weight)
    nucleus = _instantiate(node.nucleus, situation)
    satellite = _instantiate(node.satellite, situation)
    if nucleus is None:
        return satellite
    if satellite is None:
        return nucleus
    return Relation(node.label, nucleus, satellite)


def build_tree(goals: GoalConfig, situation: ConcessionSituation,
               concession_class: Optional[ConcessionClass] = None) -> DiscourseTree:
    schema = match_schema(goals, situation)
    if concession_class is not None and concession_class is not schema.concession_class:
        raise ValueError(f"class {concession_class.value} disagrees with goal "
                         f"schema row ({schema.row})")
    root = _instantiate(parse_notation(schema.tree), situation)
    if not isinstance(root, Relation):
        raise UnmappableGoalConfig(
            f"row ({schema.row}) leaves nothing to contrast in this situation")
    return DiscourseTree(root, schema.concession_class,
                         concession_kind(situation))


def _stance_on(leaf: Leaf, common: str,
               situation: ConcessionSituation) -> Optional[Polarity]:
    """Polarity on the common ground that ``leaf`` asserts or implies."""
    if leaf.prop == common:
        return leaf.polarity
    rule = situation.rule_from(leaf.prop)
    if rule is not None and rule.consequent == common:
        return rule.consequent_polarity
    return None


def check_relation_constraints(tree: DiscourseTree,
                               situation: ConcessionSituation) -> ValidationReport:
    """Check that each concessive relation joins incompatible situations.

    The two relata are incompatible when one side, directly or through a
    rule, takes the opposite stance on the common ground than the other.
    """
    problems = []
    default = situation.rule_from("A")
    common = default.consequent if default is not None else "C"

    def visit(node):
        if isinstance(node, Leaf):
            if not situation.verbalized(node.prop):
                problems.append(Problem(
                    "leaf", f"leaf {node.ref} is not a verbalized proposition"))
            return
        if node.nucleus == node.satellite:
            problems.append(Problem("relata", f"{node.label.value} relates a "
                                              f"node to itself"))
        if node.label.concessive:
            n, s = head(node.nucleus), head(node.satellite)
            ns = _stance_on(n, common, situation)
            ss = _stance_on(s, common, situation)
            if ns is None or ss is None or ns is ss:
                problems.append(Problem(
                    "incompatibility",
                    f"{node.label.value}: no rule makes {s.ref} imply a "
                    f"situation incompatible with {n.ref}"))
        visit(node.nucleus)
        visit(node.satellite)

    visit(tree.root)
    if any(isinstance(n, Relation) and n.label.concessive
           for n in _relations(tree.root.nucleus, tree.root.satellite)):
        problems.append(Problem("root", "more than one concessive relation"))
    return ValidationReport(tuple(problems))


def _relations(*nodes):
    for node in nodes:
        if isinstance(node, Relation):
            yield node
            yield from _relations(node.nucleus, node.satellite)


def node_to_notation(node: DiscourseNode) -> str:
    if isinstance(node, Leaf):
        return node.ref
    return (f"({node.label.value} {node_to_notation(node.nucleus)} "
            f"{node_to_notation(node.satellite)})")


def tree_to_notation(tree: DiscourseTree) -> str:
    return node_to_notation(tree.root)
