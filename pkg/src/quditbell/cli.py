"""Command-line entry point.

    quditbell --parties 3 --dim 4 --classical both --quantum eigen
    quditbell --parties 2-4 --dim 2,3 --variant 0 --variant 1/4 --format json
    quditbell --verify

Exit codes: 0 ok, 2 bad arguments, 3 enumeration or dimension cap exceeded,
4 verification failure.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .errors import DimensionLimitError, EnumerationLimitError
from .lhv import ENUMERATION_CAP, THREADS_ENV
from .quantum import parse_rational
from .report import CLASSICAL_METHODS, FORMATS, QUANTUM_METHODS, RunConfig, UsageError, render, run
from .verify import verify

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_VERIFY = 0, 2, 3, 4


def int_list(text: str) -> list[int]:
    """Parse "3", "2,4,6" or "2-5" (inclusive)."""
    out = []
    try:
        for part in text.split(","):
            part = part.strip()
            if "-" in part[1:]:
                lo, hi = part.split("-", 1)
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers like 3, 2,4 or 2-5, got {text!r}")
    if not out:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return out


def rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="quditbell",
        description="Classical and quantum bounds of generic and variant Bell inequalities "
        "for N parties with d outcomes.",
    )
    p.add_argument("--parties", type=int_list, action="append", help="N values: 3, 2,3 or 2-4")
    p.add_argument("--dim", type=int_list, action="append", help="d values: 4, 2,4,6 or 2-6")
    p.add_argument("--variant", type=rational, action="append",
                   help="variant phase nu as p/q or integer (repeatable, default 0)")
    p.add_argument("--classical", choices=CLASSICAL_METHODS, default="both")
    p.add_argument("--quantum", choices=QUANTUM_METHODS, default="state")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None,
                   help=f"worker processes (default: ${THREADS_ENV} or 1)")
    p.add_argument("--max-strategies", type=int, default=ENUMERATION_CAP)
    p.add_argument("--format", choices=FORMATS, default="table")
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--timing", action="store_true", help="include wall-clock timings in JSON")
    p.add_argument("--verify", action="store_true", help="run the cross-check suite")
    p.add_argument("--corrupt-branch", action="store_true", help=argparse.SUPPRESS)
    return p


def _flatten(groups):
    return None if groups is None else sorted({v for g in groups for v in g})


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    parties, dims = _flatten(args.parties), _flatten(args.dim)
    nus = sorted(set(args.variant)) if args.variant else None
    try:
        if args.verify:
            summary = verify(
                parties=parties or range(2, 5),
                dims=dims or range(2, 7),
                nus=nus or (Fraction(0), Fraction(1, 4)),
                max_strategies=args.max_strategies,
                workers=args.threads,
                seed=args.seed,
                corrupt_branch=args.corrupt_branch,
            )
            _emit(summary.render(), args.out)
            return EXIT_OK if summary.passed else EXIT_VERIFY
        if parties is None or dims is None:
            parser.error("--parties and --dim are required unless --verify is given")
        cfg = RunConfig(
            parties=parties, dims=dims, nus=nus or [Fraction(0)],
            classical=args.classical, quantum=args.quantum, samples=args.samples,
            seed=args.seed, workers=args.threads, max_strategies=args.max_strategies,
            format=args.format, out=args.out, timing=args.timing,
        )
        reports = run(cfg)
    except UsageError as exc:
        print(f"quditbell: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EnumerationLimitError, DimensionLimitError) as exc:
        print(f"quditbell: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"quditbell: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(render(reports, cfg.format), cfg.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
