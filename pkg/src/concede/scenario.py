"""Scenario documents: situation, goals and default style in one JSON file.

Layout (all top-level keys except ``metadata`` and ``style`` are required)::

    {
      "metadata": {"name": "...", "source": "..."},
      "propositions": {
        "A": {"polarity": "positive", "verbalized": true, "weight": 1,
              "unrealized_action": false,
              "clause_forms": {"en": {"declarative_main": "...",
                                      "subordinate": "..."}}},
        ...
      },
      "rules": [
        {"antecedent": "A", "consequent": "C",
         "consequent_polarity": "positive", "strength": "default"},
        {"antecedent": "B", "consequent": "C",
         "consequent_polarity": "negated", "strength": "context-specific"}
      ],
      "goals": {"main": {"act": "CONVINCE", "content": "NOT-C"},
                "minor": [{"act": "INFORM", "content": "B"}],
                "presuppositions": ["A", "A->C"]},
      "style": {"formality": "neutral", "emphasis": true}
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import BinaryIO, Union

from concede.errors import ParseError, ScenarioReferenceError
from concede.knowledge import (CLAUSE_VARIANTS, ActKind, CommunicativeAct,
                               ConcessionSituation, DefaultRule, GoalConfig,
                               Polarity, Proposition, Strength, is_rule_ref,
                               split_literal)
from concede.linearize import StyleParams


@dataclass(frozen=True)
class Scenario:
    situation: ConcessionSituation
    goals: GoalConfig
    style: StyleParams = StyleParams()
    metadata: dict = field(default_factory=dict)

    @property
    def name(self) -> str:
        return str(self.metadata.get("name", ""))


def _need(obj, key, where, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"missing field {where}.{key}" if where else f"missing field {key}")
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise ParseError(f"field {where}.{key} must be {kind.__name__}")
    return value


def _enum(cls, value, where):
    try:
        return cls(value)
    except ValueError:
        raise ParseError(f"field {where}: unknown value {value!r}") from None


def _proposition(pid, data):
    where = f"propositions.{pid}"
    if not isinstance(data, dict):
        raise ParseError(f"field {where} must be an object")
    forms = data.get("clause_forms", {})
    if not isinstance(forms, dict):
        raise ParseError(f"field {where}.clause_forms must be an object")
    clean = {}
    for lang, variants in forms.items():
        if not isinstance(variants, dict):
            raise ParseError(f"field {where}.clause_forms.{lang} must be an object")
        for variant, text in variants.items():
            if variant not in CLAUSE_VARIANTS:
                raise ParseError(f"field {where}.clause_forms.{lang}: unknown "
                                 f"variant {variant!r}")
            if not isinstance(text, str) or not text.strip():
                raise ParseError(f"field {where}.clause_forms.{lang}.{variant} "
                                 f"must be a non-empty string")
            if text.rstrip()[-1] in ".!?":
                raise ParseError(f"field {where}.clause_forms.{lang}.{variant} "
                                 f"must not end in punctuation")
        clean[lang] = dict(variants)
    weight = data.get("weight", 1)
    if not isinstance(weight, int) or isinstance(weight, bool) or weight < 1:
        raise ParseError(f"field {where}.weight must be a positive integer")
    return Proposition(
        id=pid,
        polarity=_enum(Polarity, data.get("polarity", "positive"), f"{where}.polarity"),
        clause_forms=clean,
        verbalized=bool(data.get("verbalized", True)),
        unrealized_action=bool(data.get("unrealized_action", False)),
        weight=weight,
    )


def _act(data, where):
    kind = _enum(ActKind, _need(data, "act", where, str), f"{where}.act")
    return CommunicativeAct(kind, _need(data, "content", where, str))


def scenario_from_dict(doc: dict) -> Scenario:
    if not isinstance(doc, dict):
        raise ParseError("scenario must be a JSON object")
    props = _need(doc, "propositions", "", dict)
    propositions = tuple(_proposition(pid, data) for pid, data in props.items())
    declared = {p.id for p in propositions}

    rules = []
    for i, r in enumerate(_need(doc, "rules", "", list)):
        where = f"rules[{i}]"
        rule = DefaultRule(
            antecedent=_need(r, "antecedent", where, str),
            consequent=_need(r, "consequent", where, str),
            consequent_polarity=_enum(Polarity, r.get("consequent_polarity", "positive"),
                                      f"{where}.consequent_polarity"),
            strength=_enum(Strength, r.get("strength", "default"), f"{where}.strength"),
        )
        # B may stay wholly implicit: its rule can be known without B itself
        for end in (rule.antecedent, rule.consequent):
            if end not in declared and not (end == "B" and end == rule.antecedent):
                raise ScenarioReferenceError(end)
        rules.append(rule)

    g = _need(doc, "goals", "", dict)
    main = _act(_need(g, "main", "goals", dict), "goals.main")
    minor = tuple(_act(a, f"goals.minor[{i}]")
                  for i, a in enumerate(g.get("minor", [])))
    presup = frozenset(g.get("presuppositions", []))
    rule_refs = {r.ref for r in rules}
    for ref in [main.content, *(a.content for a in minor), *presup]:
        if is_rule_ref(ref):
            if ref not in rule_refs:
                raise ScenarioReferenceError(ref)
        elif split_literal(ref)[0] not in declared:
            raise ScenarioReferenceError(split_literal(ref)[0])

    style_doc = doc.get("style", {})
    try:
        style = StyleParams(**style_doc)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"field style: {exc}") from None
    return Scenario(ConcessionSituation(propositions, tuple(rules)),
                    GoalConfig(main, minor, presup), style,
                    dict(doc.get("metadata", {})))


def parse_scenario(source: Union[BinaryIO, bytes, str]) -> Scenario:
    """Parse a scenario from a byte stream, raw bytes or a file path."""
    name = None
    if isinstance(source, str):
        name = source
        with open(source, "rb") as fh:
            data = fh.read()
    elif isinstance(source, bytes):
        data = source
    else:
        data = source.read()
    try:
        doc = json.loads(data.decode("utf-8"))
    except UnicodeDecodeError as exc:
        raise ParseError(f"not UTF-8: {exc}", source=name) from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{exc.msg} (column {exc.colno})", exc.lineno, name) from None
    try:
        return scenario_from_dict(doc)
    except ParseError as exc:
        if name and exc.source is None:
            raise ParseError(str(exc), source=name) from None
        raise
