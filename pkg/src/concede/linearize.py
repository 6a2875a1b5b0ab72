"""Lowering of discourse trees into per-sentence plans.

A plan fixes what one sentence says and in which order, how its clauses are
tied together (taxis), and which marker groups may signal the concession.
The final marker is picked later, during realization.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from concede.discourse import (DiscourseNode, DiscourseTree, Leaf, Relation,
                               RelationLabel, leaves)
from concede.errors import UnsupportedTree
from concede.knowledge import (ConcessionClass, ConcessionKind,
                               ConcessionSituation)
from concede.lexicon import MarkerGroup

FORMALITIES = ("neutral", "formal", "informal")
REGISTERS = ("written", "spoken")


class Taxis(str, Enum):
    HYPOTACTIC = "Hypotactic"
    PARATACTIC = "Paratactic"
    COHESIVE = "Cohesive"


class Role(str, Enum):
    CONCEDED = "conceded"
    ASSERTED = "asserted"
    EVIDENCE = "evidence"
    CAUSE = "cause"


@dataclass(frozen=True)
class Segment:
    content: str
    role: Role
    variant: str = "declarative_main"

    @property
    def prop(self) -> str:
        return self.content[4:] if self.content.startswith("NOT-") else self.content


@dataclass(frozen=True)
class SentencePlan:
    """One sentence to be realized.

    ``marker_constraint`` lists the admissible groups for the concessive
    link in order of preference; it is empty when the sentence carries no
    concessive marker.  ``causal_link`` is a because-clause attached to the
    end of the sentence.  ``theme_override`` holds the index of the segment
    forced into thematic (first) position against the default order.
    """

    segments: tuple[Segment, ...]
    taxis: Taxis
    marker_constraint: tuple[MarkerGroup, ...] = ()
    causal_link: Optional[Segment] = None
    conjunctive_slot: bool = False
    theme_override: Optional[int] = None
    exclamatory: bool = False

    def all_segments(self) -> tuple[Segment, ...]:
        if self.causal_link is None:
            return self.segments
        return self.segments + (self.causal_link,)

    def as_dict(self) -> dict:
        def seg(s):
            return {"content": s.content, "role": s.role.value, "variant": s.variant}
        return {
            "segments": [seg(s) for s in self.segments],
            "taxis": self.taxis.value,
            "marker_constraint": [g.value for g in self.marker_constraint],
            "causal_link": seg(self.causal_link) if self.causal_link else None,
            "conjunctive_slot": self.conjunctive_slot,
            "theme_override": self.theme_override,
            "exclamatory": self.exclamatory,
        }


@dataclass(frozen=True)
class StyleParams:
    formality: str = "neutral"
    emphasis: bool = False
    intensify: bool = False
    register: str = "written"
    complexity_threshold: int = 1
    conditional: bool = False

    def __post_init__(self):
        if self.formality not in FORMALITIES:
            raise ValueError(f"formality must be one of {FORMALITIES}")
        if self.register not in REGISTERS:
            raise ValueError(f"register must be one of {REGISTERS}")
        if self.complexity_threshold < 1:
            raise ValueError("complexity_threshold must be >= 1")


def complexity(node: DiscourseNode) -> int:
    """Number of elementary propositions under ``node``."""
    return sum(leaf.weight for leaf in leaves(node))


@dataclass
class _Parts:
    a: Leaf
    other: Leaf                      # Not-C, or B in a substitution
    b: Optional[Leaf] = None
    support: Optional[RelationLabel] = None
    satellite: Optional[DiscourseNode] = field(default=None, repr=False)


def _is(leaf, ref):
    return isinstance(leaf, Leaf) and leaf.ref == ref


def _decompose(tree: DiscourseTree) -> _Parts:
    root, cls = tree.root, tree.concession_class
    expected = (RelationLabel.EXT_CONCESSION if cls is ConcessionClass.CONCEDE_III
                else RelationLabel.RST_CONCESSION)
    if root.label is not expected:
        raise UnsupportedTree(f"{cls.value} tree rooted in {root.label.value}")
    if cls is ConcessionClass.CONCEDE_II:
        conceded, claim = root.nucleus, root.satellite
    else:
        conceded, claim = root.satellite, root.nucleus
    if not _is(conceded, "A"):
        raise UnsupportedTree(f"{cls.value}: A must be the "
                              f"{'nucleus' if cls is ConcessionClass.CONCEDE_II else 'satellite'}")
    if tree.kind is ConcessionKind.SUBSTITUTION:
        if not _is(claim, "B"):
            raise UnsupportedTree("substitution tree must relate A and B")
        return _Parts(conceded, claim, satellite=root.satellite)
    if _is(claim, "NOT-C"):
        return _Parts(conceded, claim, satellite=root.satellite)
    allowed = {
        ConcessionClass.CONCEDE_I: (RelationLabel.EVIDENCE, RelationLabel.MOTIVATION),
        ConcessionClass.CONCEDE_II: (RelationLabel.EVIDENCE,),
        ConcessionClass.CONCEDE_III: (RelationLabel.CAUSE,),
    }[cls]
    if (isinstance(claim, Relation) and claim.label in allowed
            and _is(claim.nucleus, "NOT-C") and _is(claim.satellite, "B")):
        return _Parts(conceded, claim.nucleus, claim.satellite, claim.label,
                      satellite=root.satellite)
    raise UnsupportedTree(f"unsupported {cls.value} tree shape")


def _available(situation, prop, variant):
    if situation is None:
        return False
    p = situation.get(prop)
    langs = situation.languages
    return bool(langs) and p is not None and all(p.has_form(l, variant) for l in langs)


def linearize(tree: DiscourseTree, style: StyleParams,
              situation: Optional[ConcessionSituation] = None) -> list[SentencePlan]:
    """Turn ``tree`` into an ordered list of sentence plans.

    ``situation`` is consulted only to see which optional clause variants
    (nominal, elliptical) exist in every language; without it those
    variants are never requested.
    """
    parts = _decompose(tree)
    cls = tree.concession_class
    if tree.kind is ConcessionKind.SUBSTITUTION:
        return [_substitution(parts, situation)]

    thr = style.complexity_threshold
    a_main = Segment(parts.a.ref, Role.CONCEDED)
    claim = Segment(parts.other.ref, Role.ASSERTED)
    tail: list[SentencePlan] = []
    causal = None
    if parts.b is not None:
        role = Role.CAUSE if cls is ConcessionClass.CONCEDE_III else Role.EVIDENCE
        b_seg = Segment(parts.b.ref, role, "subordinate")
        if parts.b.weight > thr:
            tail.append(SentencePlan((Segment(parts.b.ref, role),), Taxis.COHESIVE))
        else:
            causal = b_seg

    if cls is ConcessionClass.CONCEDE_I:
        plans = _concede_i(parts, style, a_main, claim, causal)
    elif cls is ConcessionClass.CONCEDE_II:
        plans = _concede_ii(parts, style, a_main, claim, causal)
    else:
        plans = _concede_iii(parts, style, a_main, claim, causal, situation)
    return plans + tail


def _concede_i(parts, style, a_main, claim, causal):
    thr = style.complexity_threshold
    if parts.support is RelationLabel.MOTIVATION:
        # prompting an action: the concession is granted in a main clause of
        # its own ("you are right that ..., but ...") and the appeal is exclaimed
        return [SentencePlan((a_main, claim), Taxis.PARATACTIC,
                             (MarkerGroup.COORDINATING_CONJUNCTION,),
                             causal_link=causal, exclamatory=True)]
    if complexity(parts.satellite) > thr:
        return [
            SentencePlan((a_main,), Taxis.COHESIVE),
            SentencePlan((claim,), Taxis.COHESIVE,
                         (MarkerGroup.CONJUNCTIVE_ADJUNCT,
                          MarkerGroup.COORDINATING_CONJUNCTION),
                         causal_link=causal),
        ]
    a_sub = Segment(parts.a.ref, Role.CONCEDED, "subordinate")
    return [SentencePlan((a_sub, claim), Taxis.HYPOTACTIC,
                         (MarkerGroup.SUBORDINATING_CONJUNCTION,),
                         causal_link=causal, conjunctive_slot=style.emphasis)]


def _concede_ii(parts, style, a_main, claim, causal):
    nucleus = Segment(parts.a.ref, Role.CONCEDED)
    if complexity(parts.satellite) < style.complexity_threshold + 1:
        return [SentencePlan((nucleus, claim), Taxis.PARATACTIC,
                             (MarkerGroup.COORDINATING_CONJUNCTION,),
                             causal_link=causal)]
    return [
        SentencePlan((nucleus,), Taxis.COHESIVE),
        SentencePlan((claim,), Taxis.COHESIVE,
                     (MarkerGroup.CONJUNCTIVE_ADJUNCT,), causal_link=causal),
    ]


def _concede_iii(parts, style, a_main, claim, causal, situation):
    exclamatory = style.emphasis or (style.intensify and parts.b is None)
    if complexity(parts.satellite) > style.complexity_threshold:
        return [
            SentencePlan((a_main,), Taxis.COHESIVE),
            SentencePlan((claim,), Taxis.COHESIVE,
                         (MarkerGroup.CONJUNCTIVE_ADJUNCT,), causal_link=causal,
                         exclamatory=exclamatory),
        ]
    variant = "subordinate"
    if style.formality == "formal" and _available(situation, "A", "nominal"):
        variant = "nominal"
    sat = Segment(parts.a.ref, Role.CONCEDED, variant)
    groups = (MarkerGroup.SUBORDINATING_CONJUNCTION, MarkerGroup.PREPOSITION)
    if style.emphasis:
        return [SentencePlan((claim, sat), Taxis.HYPOTACTIC, groups,
                             causal_link=causal, theme_override=0,
                             exclamatory=True)]
    return [SentencePlan((sat, claim), Taxis.HYPOTACTIC, groups,
                         causal_link=causal, exclamatory=exclamatory)]


def _substitution(parts, situation):
    variant = "elliptical" if _available(situation, "B", "elliptical") else "declarative_main"
    return SentencePlan(
        (Segment(parts.a.ref, Role.CONCEDED), Segment(parts.other.ref, Role.ASSERTED, variant)),
        Taxis.PARATACTIC,
        (MarkerGroup.SPLIT_PARTICLE, MarkerGroup.COORDINATING_CONJUNCTION))
