"""Choice networks for hypotactic concessive markers.

A network is a set of systems.  Each system reads one input dimension and
selects one feature for it; a feature may realize marker lemmas, add a
prefix to the marked clause, hand the choice over to a lexicon group, refuse
the combination, or enter further systems.  Systems entered from the same
feature are traversed in parallel.

Network description format (UTF-8, ``#`` comments, shell-style quoting)::

    network <language>
    entry <entry-feature> -> SYSTEM [SYSTEM ...]
    system <NAME> on <input>
      <input-value> [<feature>] <statement> ...

Statements: ``-> SYSTEM ...``, ``marker LEMMA ...``,
``prefix TEXT comma|sentence``, ``delegate GROUP``, ``invalid MESSAGE`` and
``inferred`` (branch reconstructed rather than attested).
"""

from __future__ import annotations

import shlex
from collections import deque
from dataclasses import dataclass, field
from importlib import resources
from typing import Mapping, Optional, Union

from concede.errors import InvalidFeatureCombination, ParseError
from concede.lexicon import MarkerGroup

INPUTS = ("kind", "thematic_N", "conditional", "intensify", "formality", "emphasis")

INPUT_DOMAIN = {
    "kind": ("violated-implication", "substitution"),
    "thematic_N": (False, True),
    "conditional": (False, True),
    "intensify": (False, True),
    "formality": ("neutral", "formal", "informal"),
    "emphasis": (False, True),
}


@dataclass(frozen=True)
class NetworkFeature:
    system: str
    value: str


@dataclass(frozen=True)
class NetworkSelection:
    path: tuple[NetworkFeature, ...]
    markers: tuple[str, ...] = ()
    prefix: Optional[str] = None
    prefix_boundary: str = "comma"
    delegate: Optional[MarkerGroup] = None
    inferred: tuple[str, ...] = ()

    @property
    def features(self) -> tuple[str, ...]:
        return tuple(f.value for f in self.path)


@dataclass
class Branch:
    value: str
    feature: str
    enter: list[str] = field(default_factory=list)
    markers: list[str] = field(default_factory=list)
    prefix: Optional[tuple[str, str]] = None
    delegate: Optional[MarkerGroup] = None
    invalid: Optional[str] = None
    inferred: bool = False


@dataclass
class System:
    name: str
    input: str
    branches: dict[str, Branch] = field(default_factory=dict)


@dataclass
class Network:
    language: str
    entry: str = "concession-dependent"
    start: list[str] = field(default_factory=list)
    systems: dict[str, System] = field(default_factory=dict)

    def traverse(self, inputs: Mapping[str, object]) -> NetworkSelection:
        path = []
        markers: list[str] = []
        prefix = None
        delegate = None
        inferred = []
        visited = set()
        queue = deque(self.start)
        while queue:
            name = queue.popleft()
            if name in visited:
                continue
            visited.add(name)
            system = self.systems[name]
            value = _input_value(inputs, system.input)
            branch = system.branches.get(value)
            if branch is None:
                raise InvalidFeatureCombination(
                    f"{self.language}: system {name} has no choice for "
                    f"{system.input}={value}")
            if branch.invalid is not None:
                raise InvalidFeatureCombination(f"{self.language}: {branch.invalid}")
            path.append(NetworkFeature(name, branch.feature))
            if branch.inferred:
                inferred.append(name)
            if branch.markers:
                if markers:
                    raise ValueError(f"network {self.language}: two systems "
                                     f"realize a marker")
                markers = list(branch.markers)
            if branch.prefix is not None:
                prefix = branch.prefix
            if branch.delegate is not None:
                delegate = branch.delegate
            queue.extend(branch.enter)
        return NetworkSelection(
            path=tuple(path), markers=tuple(markers),
            prefix=prefix[0] if prefix else None,
            prefix_boundary=prefix[1] if prefix else "comma",
            delegate=delegate, inferred=tuple(inferred))


def _input_value(inputs, key):
    value = inputs[key]
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(getattr(value, "value", value))


def parse_networks(text: str, source: Optional[str] = None) -> dict[str, Network]:
    networks: dict[str, Network] = {}
    current: Optional[Network] = None
    system: Optional[System] = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        try:
            tokens = shlex.split(raw, comments=True)
        except ValueError as exc:
            raise ParseError(str(exc), lineno, source) from None
        if not tokens:
            continue
        head = tokens[0]
        if head == "network":
            if len(tokens) != 2:
                raise ParseError("usage: network <language>", lineno, source)
            current = networks.setdefault(tokens[1], Network(tokens[1]))
            system = None
        elif current is None:
            raise ParseError("statement outside a network block", lineno, source)
        elif head == "entry":
            if len(tokens) < 4 or tokens[2] != "->":
                raise ParseError("usage: entry <feature> -> SYSTEM ...", lineno, source)
            current.entry = tokens[1]
            current.start = tokens[3:]
        elif head == "system":
            if len(tokens) != 4 or tokens[2] != "on":
                raise ParseError("usage: system <NAME> on <input>", lineno, source)
            if tokens[3] not in INPUTS:
                raise ParseError(f"unknown input {tokens[3]!r}", lineno, source)
            system = System(tokens[1], tokens[3])
            current.systems[system.name] = system
        else:
            if system is None:
                raise ParseError("branch outside a system", lineno, source)
            branch = _parse_branch(tokens, lineno, source)
            system.branches[branch.value] = branch
    for net in networks.values():
        _check_network(net, source)
    return networks


def _parse_branch(tokens, lineno, source):
    if len(tokens) < 2 or not (tokens[1].startswith("[") and tokens[1].endswith("]")):
        raise ParseError("usage: <value> [<feature>] statements", lineno, source)
    branch = Branch(tokens[0], tokens[1][1:-1])
    rest = tokens[2:]
    keywords = {"->", "marker", "prefix", "delegate", "invalid", "inferred"}
    i = 0
    while i < len(rest):
        kw = rest[i]
        j = i + 1
        while j < len(rest) and rest[j] not in keywords:
            j += 1
        args = rest[i + 1:j]
        if kw == "->":
            branch.enter.extend(args)
        elif kw == "marker":
            branch.markers.extend(args)
        elif kw == "prefix":
            if len(args) != 2 or args[1] not in ("comma", "sentence"):
                raise ParseError("usage: prefix TEXT comma|sentence", lineno, source)
            branch.prefix = (args[0], args[1])
        elif kw == "delegate":
            try:
                branch.delegate = MarkerGroup(args[0])
            except (ValueError, IndexError):
                raise ParseError(f"bad delegate group {args}", lineno, source) from None
        elif kw == "invalid":
            branch.invalid = " ".join(args) or "invalid feature combination"
        elif kw == "inferred":
            branch.inferred = True
        else:
            raise ParseError(f"unknown statement {kw!r}", lineno, source)
        i = j
    return branch


def _check_network(net, source):
    targets = list(net.start)
    for system in net.systems.values():
        for branch in system.branches.values():
            targets.extend(branch.enter)
    for name in targets:
        if name not in net.systems:
            raise ParseError(f"network {net.language}: unknown system {name!r}",
                             source=source)


_DEFAULT: Optional[dict[str, Network]] = None


def load_networks(source: Union[str, bytes, None] = None) -> dict[str, Network]:
    """Load network descriptions from a path or bytes; bundled default if None."""
    global _DEFAULT
    if source is None:
        if _DEFAULT is None:
            text = resources.files("concede.data").joinpath("networks.txt").read_text("utf-8")
            _DEFAULT = parse_networks(text, "networks.txt")
        return _DEFAULT
    if isinstance(source, bytes):
        return parse_networks(source.decode("utf-8"))
    with open(source, encoding="utf-8") as fh:
        return parse_networks(fh.read(), source)


def traverse_network(language: str, inputs: Mapping[str, object],
                     networks: Optional[Mapping[str, Network]] = None) -> NetworkSelection:
    """Walk the network for ``language`` under ``inputs``.

    ``inputs`` needs every key in ``INPUTS``; booleans for the flags, the
    concession kind as ``"substitution"``/``"violated-implication"`` (or a
    ConcessionKind) and formality as ``neutral``/``formal``/``informal``.
    """
    networks = load_networks() if networks is None else networks
    if language not in networks:
        raise InvalidFeatureCombination(f"no network for language {language!r}")
    missing = [k for k in INPUTS if k not in inputs]
    if missing:
        raise InvalidFeatureCombination(f"missing network inputs {missing}")
    inputs = dict(inputs)
    kind = inputs["kind"]
    kind = str(getattr(kind, "value", kind))
    inputs["kind"] = {"ViolatedImplication": "violated-implication",
                      "Substitution": "substitution"}.get(kind, kind)
    return networks[language].traverse(inputs)
