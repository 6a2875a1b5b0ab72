"""Bilingual inventory of concessive discourse markers.

The data file is line oriented, UTF-8, one record per line::

    lemma|language|group|features|frequency|placement

``features`` is a comma-separated list (may be empty), ``frequency`` an
optional non-negative integer (corpus count, German only).  Split-particle
lemmas separate their parts with ``…``.  Everything after ``#`` is a comment.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from typing import BinaryIO, Iterable, Optional, Union

from concede.errors import InvariantError, NoCandidate, ParseError

LANGUAGES = ("en", "de")

FEATURES = frozenset({
    "formal", "informal", "colloquial", "archaic", "legalistic", "intensified",
    "conditional", "substitutive", "argumentative", "thematic_N_compatible",
    "non_adjacent_capable", "dialogic",
})

SPLIT_SEPARATOR = "…"


class MarkerGroup(str, Enum):
    CONJUNCTIVE_ADJUNCT = "ConjunctiveAdjunct"
    COORDINATING_CONJUNCTION = "CoordinatingConjunction"
    SUBORDINATING_CONJUNCTION = "SubordinatingConjunction"
    PREPOSITION = "Preposition"
    SPLIT_PARTICLE = "SplitParticle"


MANDATORY_GROUPS = (
    MarkerGroup.CONJUNCTIVE_ADJUNCT,
    MarkerGroup.COORDINATING_CONJUNCTION,
    MarkerGroup.SUBORDINATING_CONJUNCTION,
    MarkerGroup.PREPOSITION,
)


class Placement(str, Enum):
    CLAUSE_INITIAL = "clause_initial"
    CLAUSE_SECOND_OR_LATER = "clause_second_or_later"
    CLAUSE_FINAL = "clause_final"
    PRE_NOMINAL = "pre_nominal"
    SPLIT_ACROSS_CLAUSES = "split_across_clauses"


@dataclass(frozen=True)
class MarkerEntry:
    lemma: str
    language: str
    group: MarkerGroup
    features: frozenset[str]
    frequency: Optional[int]
    placement: Placement

    @property
    def parts(self) -> tuple[str, ...]:
        return tuple(self.lemma.split(SPLIT_SEPARATOR))

    def __str__(self):
        freq = "" if self.frequency is None else f"({self.frequency})"
        return f"{self.lemma}{freq}"


def rank_key(entry: MarkerEntry):
    """Frequency descending, absent frequency last, then lemma."""
    if entry.frequency is None:
        return (1, 0, entry.lemma)
    return (0, -entry.frequency, entry.lemma)


@dataclass(frozen=True)
class Lexicon:
    entries: tuple[MarkerEntry, ...]

    def __post_init__(self):
        _check_invariants(self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def find(self, lemma: str, language: str,
             group: Optional[MarkerGroup] = None) -> Optional[MarkerEntry]:
        for entry in self.entries:
            if (entry.lemma == lemma and entry.language == language
                    and (group is None or entry.group is group)):
                return entry
        return None


def _check_invariants(entries):
    seen = set()
    for entry in entries:
        key = (entry.lemma, entry.language, entry.group)
        if key in seen:
            raise InvariantError(f"duplicate entry ({entry.lemma}, {entry.language}) "
                                 f"in group {entry.group.value}")
        seen.add(key)
        if entry.group is MarkerGroup.SPLIT_PARTICLE:
            if entry.placement is not Placement.SPLIT_ACROSS_CLAUSES or len(entry.parts) != 2:
                raise InvariantError(f"split particle {entry.lemma!r} needs two parts "
                                     f"and split_across_clauses placement")
        if entry.group is MarkerGroup.PREPOSITION and entry.placement is not Placement.PRE_NOMINAL:
            raise InvariantError(f"preposition {entry.lemma!r} must be pre_nominal")
    for group in MANDATORY_GROUPS:
        for lang in LANGUAGES:
            if not any(e.group is group and e.language == lang for e in entries):
                raise InvariantError(f"no {group.value} entries for {lang!r}")


def parse_record(line: str, lineno: int, source: Optional[str] = None) -> MarkerEntry:
    fields = [f.strip() for f in line.split("|")]
    if len(fields) != 6:
        raise ParseError(f"expected 6 '|'-separated fields, got {len(fields)}",
                         lineno, source)
    lemma, lang, group, feats, freq, placement = fields
    if not lemma:
        raise ParseError("empty lemma", lineno, source)
    if lang not in LANGUAGES:
        raise ParseError(f"unknown language {lang!r}", lineno, source)
    try:
        group = MarkerGroup(group)
    except ValueError:
        raise ParseError(f"unknown marker group {group!r}", lineno, source) from None
    features = frozenset(f.strip() for f in feats.split(",") if f.strip())
    unknown = features - FEATURES
    if unknown:
        raise ParseError(f"unknown features {sorted(unknown)}", lineno, source)
    if freq:
        if not freq.isdigit():
            raise ParseError(f"bad frequency {freq!r}", lineno, source)
        frequency = int(freq)
    else:
        frequency = None
    try:
        placement = Placement(placement)
    except ValueError:
        raise ParseError(f"unknown placement {placement!r}", lineno, source) from None
    return MarkerEntry(lemma, lang, group, features, frequency, placement)


def load_lexicon(source: Union[BinaryIO, bytes, str, None] = None) -> Lexicon:
    """Load a lexicon from a byte stream, raw bytes, or a file path.

    Without an argument the bundled default lexicon is loaded.
    """
    name = None
    if source is None:
        data = resources.files("concede.data").joinpath("lexicon.txt").read_bytes()
        name = "lexicon.txt"
    elif isinstance(source, bytes):
        data = source
    elif isinstance(source, str):
        name = source
        with open(source, "rb") as fh:
            data = fh.read()
    else:
        data = source.read()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"not UTF-8: {exc}", source=name) from None
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            entries.append(parse_record(line, lineno, name))
    return Lexicon(tuple(entries))


def select_candidates(lexicon: Lexicon, language: str, group: MarkerGroup,
                      required: Iterable[str] = (),
                      forbidden: Iterable[str] = ()) -> list[MarkerEntry]:
    required, forbidden = frozenset(required), frozenset(forbidden)
    hits = [e for e in lexicon.entries
            if e.language == language and e.group is group
            and required <= e.features and not forbidden & e.features]
    if not hits:
        raise NoCandidate(f"no {group.value} marker for {language!r} with "
                          f"{sorted(required)} and without {sorted(forbidden)}")
    return sorted(hits, key=rank_key)


@dataclass(frozen=True)
class Seeded:
    """Reproducible pseudo-random pick; ``salt`` decorrelates call sites."""

    seed: int
    salt: str = ""


DETERMINISTIC = "deterministic"


def rank_and_pick(candidates: list[MarkerEntry],
                  policy: Union[str, Seeded] = DETERMINISTIC) -> MarkerEntry:
    ordered = sorted(candidates, key=rank_key)
    if isinstance(policy, Seeded):
        rng = random.Random(f"{policy.seed}:{policy.salt}")
        return ordered[rng.randrange(len(ordered))]
    return ordered[0]
