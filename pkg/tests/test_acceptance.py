"""Acceptance criteria 1-7.

Each criterion is one test.  ``record`` keeps a short measurement per
criterion; conftest prints one PASS/FAIL line per criterion at the end.
"""

import itertools
import os
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

from concede.discourse import build_tree, check_relation_constraints, tree_to_notation
from concede.errors import InvalidFeatureCombination, NoCandidate
from concede.knowledge import (ConcessionClass, ConcessionKind, classify_concession,
                               concession_kind, validate_situation)
from concede.lexicon import FEATURES, LANGUAGES, MarkerGroup, select_candidates
from concede.linearize import StyleParams, linearize
from concede.network import INPUT_DOMAIN, INPUTS, traverse_network
from concede.realize import generate
from concede.scenario import parse_scenario

from synth import STYLE_GRID, random_scenario

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"
RESULTS = {}


def record(n, ok, detail=""):
    RESULTS[n] = (ok, detail)


def load(name):
    return parse_scenario(str(SCENARIOS / f"{name}.scn"))


def straight(text):
    return text.replace("’", "'").replace("‘", "'")


# -- 1: golden regeneration ------------------------------------------------

GOLDEN = [
    ("windows_i", "en", {}, [
        "Although you are correct that Windows is cheap, I nevertheless "
        "wouldn't buy it, because it has many bugs."]),
    ("windows_ii", "en", {}, [
        "You are right that Windows is cheap, but you really shouldn't buy "
        "it, because it has many bugs!"]),
    ("windows_iii", "en", {}, [
        "Windows is cheap.",
        "That doesn't mean I bought it, though, because it has many bugs."]),
    ("windows_iv", "en", {}, ["Even though Windows is cheap, I would never buy it!"]),
    ("windows_v", "en", {"intensify": True}, [
        "Even though Windows is cheap, I would never buy it, because it has many bugs."]),
    ("chocolate", "de", {}, [
        "Hans hat zwar viel Schokolade gegessen, aber keine Kekse."]),
    ("december", "de", {"emphasis": True}, [
        "Es fiel kein Schnee und die Temperatur stieg auf 20 Grad, und das, "
        "obwohl es Dezember war!"]),
    ("december", "en", {"emphasis": True}, [
        "No snow fell and the temperature rose to 20 degrees.",
        "And that although it was December!"]),
]


def test_1_golden_regeneration():
    start = time.perf_counter()
    failures = []
    for name, lang, changes, expected in GOLDEN:
        sc = load(name)
        style = StyleParams(**{**sc.style.__dict__, **changes})
        got = generate(sc, (lang,), style).sentences[lang]
        # the English December text is one unit spanning two orthographic sentences
        if straight(" ".join(got)) != straight(" ".join(expected)):
            failures.append(f"{name}/{lang}: {got!r}")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 1.0
    record(1, ok, f"{len(GOLDEN) - len(failures)}/{len(GOLDEN)} goldens, {elapsed:.3f}s")
    assert not failures, failures
    assert elapsed < 1.0


# -- 2: goal-table tree notation ------------------------------------------

GOAL_TABLE = {
    "windows_i": "(CONCESSION (EVIDENCE NOT-C B) A)",
    "windows_ii": "(CONCESSION (MOTIVATION NOT-C B) A)",
    "windows_iii": "(CONCESSION A (EVIDENCE NOT-C B))",
    "windows_iv": "(EXT-CONCESSION NOT-C A)",
    "windows_v": "(EXT-CONCESSION (CAUSE NOT-C B) A)",
}


def test_2_goal_table_notation():
    got = {}
    for name in GOAL_TABLE:
        sc = load(name)
        got[name] = tree_to_notation(build_tree(sc.goals, sc.situation))
    hits = sum(got[n] == GOAL_TABLE[n] for n in GOAL_TABLE)
    record(2, hits == 5, f"{hits}/5 rows")
    assert got == GOAL_TABLE


# -- 3: marker-corpus fixtures --------------------------------------------

def test_3_corpus_fixtures():
    problems = []
    for row in range(1, 11):
        sc = load(f"corpus_{row:02d}")
        report = validate_situation(sc.situation)
        if report:
            problems.append(f"corpus_{row:02d} validate: {report}")
            continue
        tree = build_tree(sc.goals, sc.situation)
        report = check_relation_constraints(tree, sc.situation)
        if report:
            problems.append(f"corpus_{row:02d} constraints: {report}")
    if concession_kind(load("corpus_09").situation) is not ConcessionKind.SUBSTITUTION:
        problems.append("corpus_09 not Substitution")
    if concession_kind(load("corpus_10").situation) is not ConcessionKind.VIOLATED_IMPLICATION:
        problems.append("corpus_10 not ViolatedImplication")
    record(3, not problems, f"10 rows, {len(problems)} problems")
    assert not problems, problems


# -- 4: ordering invariants -----------------------------------------------

def _first(text, tags):
    hits = [(text.find(t), t) for t in tags if t in text]
    return min(hits)[1] if hits else None


def test_4_ordering_invariants():
    rng = random.Random(20261019)
    n_scenarios = 1000
    checked = {"I": 0, "II": 0, "III": 0}
    violations = []
    for serial in range(n_scenarios):
        sc = random_scenario(rng, serial)
        cls = classify_concession(sc.goals, sc.situation)
        tree = build_tree(sc.goals, sc.situation, cls)
        a = f"xa{serial}"
        other = f"xc{serial}" if tree.kind is ConcessionKind.VIOLATED_IMPLICATION else f"xb{serial}"
        for grid in STYLE_GRID:
            style = StyleParams(complexity_threshold=sc.style.complexity_threshold, **grid)
            plans = linearize(tree, style, sc.situation)
            result = generate(sc, sc.situation.languages, style)
            if cls is ConcessionClass.CONCEDE_I:
                checked["I"] += 1
                if any(MarkerGroup.PREPOSITION in p.marker_constraint for p in plans):
                    violations.append((serial, grid, "Concede-I plan permits Preposition"))
                for lang, sents in result.sentences.items():
                    text = " ".join(sents)
                    if not (0 <= text.find(a) < text.find(other)):
                        violations.append((serial, grid, lang, text))
            elif cls is ConcessionClass.CONCEDE_II:
                checked["II"] += 1
                for lang, sents in result.sentences.items():
                    text = " ".join(sents)
                    # the main act of Concede-II is INFORM(A)
                    if _first(text, (a, other, f"xb{serial}")) != a:
                        violations.append((serial, grid, lang, text))
            else:
                checked["III"] += 1
    total = n_scenarios * len(STYLE_GRID)
    record(4, not violations and checked["I"] and checked["II"],
           f"{n_scenarios} scenarios x {len(STYLE_GRID)} styles = {total}; "
           f"Concede-I {checked['I']}, Concede-II {checked['II']}, "
           f"{len(violations)} violations")
    assert checked["I"] > 0 and checked["II"] > 0
    assert not violations, violations[:5]


# -- 5: lexicon oracle ----------------------------------------------------

def _brute_force(entries, language, group, required, forbidden):
    out = []
    for e in entries:
        if e.language != language or e.group != group:
            continue
        if any(f not in e.features for f in required):
            continue
        if any(f in e.features for f in forbidden):
            continue
        out.append(e)

    def key(e):
        return (e.frequency is None, -(e.frequency or 0), e.lemma)
    return sorted(out, key=key)


def test_5_lexicon_oracle(lexicon):
    rng = random.Random(5)
    features = sorted(FEATURES)
    groups = list(MarkerGroup)
    n, mismatches = 10_000, []
    for _ in range(n):
        lang = rng.choice(LANGUAGES)
        group = rng.choice(groups)
        required = set(rng.sample(features, rng.choice([0, 0, 1, 1, 2])))
        forbidden = set(rng.sample(features, rng.choice([0, 1, 2, 3]))) - required
        expected = _brute_force(lexicon.entries, lang, group, required, forbidden)
        try:
            got = select_candidates(lexicon, lang, group, required, forbidden)
        except NoCandidate:
            got = []
        if got != expected:
            mismatches.append((lang, group, required, forbidden))
    record(5, not mismatches, f"{n - len(mismatches)}/{n} queries agree")
    assert not mismatches, mismatches[:5]


# -- 6: network totality --------------------------------------------------

def expected_path(lang, kind, thematic_N, conditional, intensify, formality, emphasis):
    """Path table written from the prose description of the two networks.

    Returns ``None`` for a refused combination, else (features, markers, prefix).
    """
    feats = {kind}
    if kind == "substitution":
        if lang == "en":
            return None
        return feats, (), None
    prefix = None
    feats.add("thematic-N" if thematic_N else "thematic-S")
    if thematic_N:
        feats.add("emphatic" if emphasis else "unemphatic")
        if emphasis:
            prefix = "and that" if lang == "en" else "und das"
    if conditional:
        feats.add("conditional")
        return feats, ("even if",) if lang == "en" else ("wenn auch",), prefix
    feats.add("non-conditional")
    if lang == "en":
        if intensify:
            feats.add("intensified")
            return feats, ("even though",), prefix
        feats |= {"plain", formality}
        return feats, ("though",) if formality == "informal" else ("although",), prefix
    feats.add(formality)
    if formality == "formal":
        return feats, ("obgleich", "obschon"), prefix
    return feats, ("obwohl",), prefix


def test_6_network_totality():
    cells = mismatches = 0
    refused = 0
    bad = []
    for lang in ("en", "de"):
        for values in itertools.product(*(INPUT_DOMAIN[k] for k in INPUTS)):
            cells += 1
            inputs = dict(zip(INPUTS, values))
            expected = expected_path(lang, **inputs)
            try:
                sel = traverse_network(lang, inputs)
            except InvalidFeatureCombination:
                refused += 1
                if expected is not None:
                    bad.append((lang, inputs, "refused"))
                continue
            got = (set(sel.features), sel.markers, sel.prefix)
            if expected is None or got != expected:
                bad.append((lang, inputs, got, expected))
    und_das = traverse_network("de", dict(kind="violated-implication", thematic_N=True,
                                          conditional=False, intensify=False,
                                          formality="neutral", emphasis=True))
    combined = und_das.prefix == "und das" and und_das.markers[:1] == ("obwohl",)
    record(6, not bad and combined,
           f"{cells} cells ({refused} refused), {len(bad)} mismatches, "
           f"und das + obwohl: {combined}")
    assert cells == 2 * 96
    assert not bad, bad[:5]
    assert combined


# -- 7: determinism -------------------------------------------------------

def _corpus_run(hashseed):
    files = sorted(str(p) for p in SCENARIOS.glob("*.scn"))
    env = {**os.environ, "PYTHONHASHSEED": hashseed}
    out = b""
    for extra in ([], ["--seed", "7"]):
        proc = subprocess.run(
            [sys.executable, "-m", "concede", *files, "--emit-tree", "--emit-plans",
             *extra], capture_output=True, env=env, check=True)
        out += proc.stdout
    return out


def test_7_determinism():
    first, second = _corpus_run("1"), _corpus_run("4242")
    ok = first == second and len(first) > 0
    record(7, ok, f"{len(first)} bytes per run, identical: {first == second}")
    assert ok
