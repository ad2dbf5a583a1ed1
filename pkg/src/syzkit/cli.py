"""``syzkit`` command line.

Exit codes: 0 success, 1 input error, 2 a conformance check failed.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from .corpus import FIXTURE_NAMES, fixture_text
from .document import InputError, load_document, parse_document, parse_point
from .report import build_report, render_report

EXIT_OK, EXIT_INPUT, EXIT_CONFORMANCE = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="syzkit", description="Exact analysis of constant-coefficient linear PDE operators.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in (
        ("syzygy", "syzygy matrix S with A*S = 0"),
        ("classify", "generic rank, ellipticity, constant rank and controllability"),
        ("decompose", "controllable-uncontrollable decomposition with checks"),
        ("verify", "pointwise exactness and decomposition checks at points"),
    ):
        c = sub.add_parser(name, help=help_)
        src = c.add_mutually_exclusive_group(required=True)
        src.add_argument("--input", metavar="PATH", help="syzkit/1 JSON document")
        src.add_argument("--fixture", metavar="NAME", help="built-in fixture name")
        c.add_argument("--point", action="append", metavar="c1,...,cn",
                       help="evaluation point (repeatable); replaces the document's points")
        c.add_argument("--seed", type=int, help="sampling seed (default: from the document)")
        c.add_argument("--samples", type=int,
                       help="sample count for real checks; for verify, extra max-rank sample points")
        c.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
        c.add_argument("--output", metavar="PATH", help="write the report here instead of stdout")
        c.add_argument("--timing", action="store_true", help="include wall-clock timings (non-deterministic)")
    f = sub.add_parser("fixture", help="list fixtures or print one as a syzkit/1 document")
    f.add_argument("name", nargs="?")
    f.add_argument("--fixture", dest="fixture_name", metavar="NAME")
    f.add_argument("--output", metavar="PATH")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "fixture":
            name = args.fixture_name or args.name
            _emit(fixture_text(name) if name else "\n".join(FIXTURE_NAMES) + "\n", args.output)
            return EXIT_OK
        if args.fixture:
            doc = parse_document(fixture_text(args.fixture), args.order)
            source = f"fixture:{args.fixture}"
        else:
            doc = load_document(args.input, args.order)
            source = "file"
        points = [parse_point(p, doc.ring.n) for p in args.point] if args.point else None
        for name in ("seed", "samples"):
            val = getattr(args, name)
            if val is not None and val < 0:
                raise InputError(f"--{name} must be nonnegative")
        rep = build_report(
            args.command, doc, source=source, points=points, seed=args.seed,
            sample_count=args.samples if args.command != "verify" else None,
            verify_samples=args.samples or 0, timing=args.timing,
        )
    except InputError as exc:
        print(f"syzkit: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(render_report(rep), args.output)
    if not rep["conformance"]["ok"]:
        for v in rep["conformance"]["violations"]:
            print(f"syzkit: conformance failure: {v}", file=sys.stderr)
        return EXIT_CONFORMANCE
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
