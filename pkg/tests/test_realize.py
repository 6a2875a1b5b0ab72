import dataclasses
import random

import pytest

from concede import realize as realize_mod
from concede.discourse import build_tree
from concede.errors import MissingClauseForm, NoCandidate, PipelineError
from concede.knowledge import ConcessionKind, Polarity, Proposition
from concede.lexicon import MarkerGroup, Seeded
from concede.linearize import StyleParams, linearize
from concede.realize import (capitalize, generate, insert_at_boundary, plain,
                             realize_plan, realize_scenario)

from synth import STYLE_GRID, random_scenario


def test_boundary_helpers():
    assert insert_at_boundary("I would | not buy it", "nevertheless") == \
        "I would nevertheless not buy it"
    assert insert_at_boundary("Hans hat viel gegessen", "zwar") == "Hans zwar hat viel gegessen"
    assert plain("I would | not buy it") == "I would not buy it"
    assert capitalize("ängstlich") == "Ängstlich"


def test_row_i_plan(load, lexicon):
    sc = load("windows_i")
    [plan] = linearize(build_tree(sc.goals, sc.situation), sc.style, sc.situation)
    assert realize_plan(plan, sc.situation, lexicon, "en", sc.style) == (
        "Although you are correct that Windows is cheap, I nevertheless "
        "wouldn't buy it, because it has many bugs.")


def test_row_v_and_iv(load):
    assert realize_scenario(load("windows_v"), "en") == [
        "Even though Windows is cheap, I would never buy it, because it has many bugs."]
    assert realize_scenario(load("windows_iv"), "en", StyleParams(intensify=True)) == [
        "Even though Windows is cheap, I would never buy it!"]


def test_und_das_obwohl(load):
    [sentence] = realize_scenario(load("december"), "de")
    assert sentence.endswith(", und das, obwohl es Dezember war!")


def test_december_without_emphasis(load):
    assert realize_scenario(load("december"), "en", StyleParams()) == [
        "Although it was December, no snow fell and the temperature rose to 20 degrees."]


def test_preposition_realization(load):
    assert realize_scenario(load("corpus_04"), "de") == [
        "Ungeachtet des schlechten Wetters gingen wir spazieren."]


def test_german_hypotaxis_uses_subordinate_form(load):
    sc = load("windows_iv")
    sub = sc.situation.get("A").form("de", "subordinate")
    [sentence] = realize_scenario(sc, "de")
    assert f"obwohl {plain(sub)}".lower() in sentence.lower()


def test_split_particle_order(load):
    [sentence] = realize_scenario(load("chocolate"), "de")
    assert 0 < sentence.index("zwar") < sentence.index(", aber ")


def test_english_substitution_falls_back_to_coordination(load):
    assert realize_scenario(load("corpus_09"), "en") == ["He doesn't have a car, but he has a bike."]


def test_missing_clause_form(load, lexicon):
    sc = load("windows_iv")
    a = sc.situation.get("A")
    stripped = dataclasses.replace(a, clause_forms={
        "en": {"declarative_main": a.form("en", "declarative_main")}})
    situation = dataclasses.replace(sc.situation, propositions=tuple(
        stripped if p.id == "A" else p for p in sc.situation.propositions))
    [plan] = linearize(build_tree(sc.goals, situation), sc.style, situation)
    with pytest.raises(MissingClauseForm) as info:
        realize_plan(plan, situation, lexicon, "en", sc.style)
    assert (info.value.prop, info.value.language, info.value.variant) == ("A", "en", "subordinate")


def test_pipeline_stage_is_named(load):
    sc = load("windows_i")
    broken = dataclasses.replace(sc, situation=dataclasses.replace(
        sc.situation, rules=sc.situation.rules[:1]))
    with pytest.raises(PipelineError) as info:
        generate(broken, ("en",))
    assert info.value.stage == "validate"
    with pytest.raises(PipelineError) as info:
        generate(sc, ("fr",))
    assert info.value.stage == "validate"


def test_seeded_generation_is_reproducible(load):
    sc = load("windows_iii")
    runs = [generate(sc, ("en", "de"), policy=Seeded(9)).sentences for _ in range(3)]
    assert runs[0] == runs[1] == runs[2]


def _groups(monkeypatch, sc, style):
    """Marker groups chosen per language while realizing ``sc``."""
    seen = {}
    real_choose = realize_mod.choose_marker
    real_network = realize_mod._network_marker

    def choose(lexicon, language, group, *a, **kw):
        seen.setdefault(language, []).append(group)
        return real_choose(lexicon, language, group, *a, **kw)

    def network(ctx, selection):
        seen.setdefault(ctx.language, []).append(MarkerGroup.SUBORDINATING_CONJUNCTION)
        return real_network(ctx, selection)

    monkeypatch.setattr(realize_mod, "choose_marker", choose)
    monkeypatch.setattr(realize_mod, "_network_marker", network)
    generate(sc, ("en", "de"), style)
    monkeypatch.undo()
    return seen


def test_cross_language_group_parity(monkeypatch):
    # substitutions are exempt: English has no split particle
    rng = random.Random(3)
    checked = 0
    for serial in range(300):
        sc = random_scenario(rng, serial)
        if sc.situation.languages != ("de", "en"):
            continue
        if build_tree(sc.goals, sc.situation).kind is ConcessionKind.SUBSTITUTION:
            continue
        for grid in STYLE_GRID[::5]:
            seen = _groups(monkeypatch, sc, StyleParams(**grid))
            assert seen["en"] == seen["de"], (serial, grid)
            checked += 1
    assert checked > 100


def _order(text, serial):
    tags = [f"xa{serial}", f"xb{serial}", f"xc{serial}"]
    return sorted((text.index(t), t) for t in tags if t in text)


def test_formality_changes_only_lemmas():
    rng = random.Random(8)
    for serial in range(200):
        sc = random_scenario(rng, serial)
        for emphasis in (False, True):
            results = [generate(sc, sc.situation.languages,
                                StyleParams(formality=f, emphasis=emphasis))
                       for f in ("neutral", "formal", "informal")]
            for lang in sc.situation.languages:
                shapes = {(len(r.sentences[lang]),
                           tuple(t for _, t in _order(" ".join(r.sentences[lang]), serial)))
                          for r in results}
                assert len(shapes) == 1, (serial, lang, shapes)


def test_every_sentence_is_terminated_and_capitalized():
    rng = random.Random(21)
    for serial in range(200):
        sc = random_scenario(rng, serial)
        for grid in STYLE_GRID[::3]:
            result = generate(sc, sc.situation.languages, StyleParams(**grid))
            for sents in result.sentences.values():
                for s in sents:
                    assert s[0] == s[0].upper() and s[-1] in ".!"
                    assert "|" not in s and "  " not in s
