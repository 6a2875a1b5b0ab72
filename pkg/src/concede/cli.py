"""Command-line front end: ``concede SCENARIO... [options]``.

Exit status: 0 on success, 1 when any scenario fails in the pipeline, 2 on
usage errors.  Errors go to stderr as ``error [STAGE] FILE: MESSAGE``.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from typing import Optional, Sequence

from concede.errors import ConcedeError, PipelineError
from concede.lexicon import DETERMINISTIC, Seeded, load_lexicon
from concede.network import load_networks
from concede.realize import generate
from concede.scenario import parse_scenario

LANGS = {"en": ("en",), "de": ("de",), "both": ("en", "de")}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="concede",
        description="Generate concessive sentences in English and German.")
    p.add_argument("scenarios", nargs="+", metavar="SCENARIO",
                   help="scenario file(s); processed in the given order")
    p.add_argument("--lang", choices=sorted(LANGS),
                   help="output language(s); default: every language the "
                        "scenario has clause forms for")
    p.add_argument("--formality", choices=("neutral", "formal", "informal"))
    p.add_argument("--register", choices=("written", "spoken"))
    p.add_argument("--emphasis", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--intensify", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--conditional", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--complexity-threshold", type=int, metavar="N")
    p.add_argument("--seed", type=int, help="vary marker choice reproducibly")
    p.add_argument("--emit-tree", action="store_true",
                   help="print the discourse tree in bracket notation")
    p.add_argument("--emit-plans", action="store_true",
                   help="print sentence plans as JSON lines")
    p.add_argument("--lexicon", metavar="PATH", help="marker lexicon file")
    p.add_argument("--network", metavar="PATH", help="choice network file")
    return p


def _style(base, args):
    changes = {k: v for k, v in (
        ("formality", args.formality), ("register", args.register),
        ("emphasis", args.emphasis), ("intensify", args.intensify),
        ("conditional", args.conditional),
        ("complexity_threshold", args.complexity_threshold)) if v is not None}
    return dataclasses.replace(base, **changes)


def _fail(stage, path, exc, err):
    print(f"error [{stage}] {path}: {exc}", file=err)


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.complexity_threshold is not None and args.complexity_threshold < 1:
        print("concede: error: --complexity-threshold must be >= 1", file=err)
        return 2

    try:
        lexicon = load_lexicon(args.lexicon) if args.lexicon else load_lexicon()
    except (OSError, ConcedeError) as exc:
        _fail("lexicon", args.lexicon or "<bundled>", exc, err)
        return 1
    try:
        networks = load_networks(args.network) if args.network else load_networks()
    except (OSError, ConcedeError) as exc:
        _fail("network", args.network or "<bundled>", exc, err)
        return 1

    policy = Seeded(args.seed) if args.seed is not None else DETERMINISTIC
    status = 0
    for path in args.scenarios:
        try:
            scenario = parse_scenario(path)
        except (OSError, ConcedeError) as exc:
            _fail("parse", path, exc, err)
            status = 1
            continue
        if args.lang:
            languages = LANGS[args.lang]
        else:
            languages = tuple(l for l in LANGS["both"]
                              if l in scenario.situation.languages) or LANGS["both"]
        try:
            style = _style(scenario.style, args)
        except ValueError as exc:
            _fail("style", path, exc, err)
            status = 1
            continue
        try:
            result = generate(scenario, languages, style, lexicon=lexicon,
                              networks=networks, policy=policy)
        except PipelineError as exc:
            _fail(exc.stage, path, exc.cause, err)
            status = 1
            continue
        if len(args.scenarios) > 1:
            print(f"== {path}", file=out)
        if args.emit_tree:
            print(result.notation, file=out)
        if args.emit_plans:
            for plan in result.plans:
                print(json.dumps(plan.as_dict(), ensure_ascii=False), file=out)
        for lang in languages:
            if len(languages) > 1:
                print(f"[{lang}]", file=out)
            for sentence in result.sentences[lang]:
                print(sentence, file=out)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
