"""``skein`` command line.

Exit codes: 0 success, 1 bad input or a failed check, 2 resource guard hit.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .bracket import reduce
from .ring import ring_by_name
from .skeinmod import (
    DEFAULT_MAX_CROSSINGS,
    DEFAULT_MAX_REGISTRY,
    REPORT_HEADER,
    CutoffTooLarge,
    Preset,
    assemble_relations,
    eliminate,
    seed_generators,
)
from .surfaceword import ParseError, parse_word
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_GUARD = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_FAIL, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="skein", description="Kauffman bracket skein module computations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bracket", help="reduce a diagram file to the multicurve basis")
    b.add_argument("file")
    b.add_argument("--ring", choices=("ZA", "QA"), default="ZA")
    b.add_argument("--max-crossings", type=int, default=DEFAULT_MAX_CROSSINGS)

    for name, text in (("quotient", "cutoff presentation with survivors"), ("relations", "relation vectors only")):
        q = sub.add_parser(name, help=text)
        q.add_argument("--preset", choices=("connsum", "s1xs2"), required=True)
        q.add_argument("--n", type=int, default=1)
        q.add_argument("--m", type=int, default=1)
        q.add_argument("--K", type=int, required=True)
        q.add_argument("--ring", choices=("ZA", "QA"), default="QA")
        q.add_argument("-o", "--output")
        q.add_argument("--workers", type=int, default=1)
        q.add_argument("--max-crossings", type=int, default=DEFAULT_MAX_CROSSINGS)
        q.add_argument("--max-registry", type=int, default=DEFAULT_MAX_REGISTRY)

    v = sub.add_parser("verify", help="run a named self-check suite")
    v.add_argument("name", choices=sorted(SUITES))
    v.add_argument("--seed", type=int, default=0)
    return p


def _preset(args) -> Preset:
    if args.preset == "connsum":
        return Preset.connsum(args.n, args.m)
    return Preset.s1xs2()


def _emit(text: str, path: Optional[str]):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run_bracket(args) -> int:
    try:
        with open(args.file) as fh:
            word = parse_word(fh.read())
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if word.crossing_count() > args.max_crossings:
        print(f"error: {word.crossing_count()} crossings exceed the guard of {args.max_crossings}", file=sys.stderr)
        return EXIT_GUARD
    print(reduce(word, ring_by_name(args.ring)))
    return EXIT_OK


def run_quotient(args, relations_only: bool = False) -> int:
    if args.K < 0:
        print("error: --K must be >= 0", file=sys.stderr)
        return EXIT_FAIL
    try:
        preset = _preset(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    ring = ring_by_name(args.ring)
    try:
        reg = seed_generators(preset, args.K, max_registry=args.max_registry, max_crossings=args.max_crossings)
    except CutoffTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    rels = assemble_relations(reg, ring, workers=args.workers)
    if relations_only:
        lines = [REPORT_HEADER, "[PARAMETERS]", f"preset = {preset.label}", f"K = {args.K}", f"ring = {ring.name}",
                 "[RELATIONS]"]
        lines += [f"source={src} : {vec}" for src, vec in rels]
        text = "\n".join(lines) + "\n"
    else:
        text = eliminate(rels, reg, ring).to_text()
    _emit(text, args.output)
    return EXIT_OK


def run_verify(args) -> int:
    checks = run_suite(args.name, args.seed)
    for c in checks:
        print(c.line())
    failed = [c for c in checks if not c.ok]
    print(f"{args.name}: {len(checks) - len(failed)}/{len(checks)} passed")
    return EXIT_FAIL if failed else EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "bracket":
        return run_bracket(args)
    if args.command == "quotient":
        return run_quotient(args)
    if args.command == "relations":
        return run_quotient(args, relations_only=True)
    return run_verify(args)


if __name__ == "__main__":
    sys.exit(main())
