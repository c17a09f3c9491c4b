"""``bihcheck`` command line: run verification scenarios or isolate roots ad hoc."""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .multipoly import ParseError
from .report import DEFAULT_PRECISION_BITS, Report, Scenario, UsageError, run_all, run_scenario, tube_scenario

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--precision-bits", type=int, default=DEFAULT_PRECISION_BITS,
                   help="radii are printed to within 2**-P")
    p.add_argument("--format", choices=("json", "md"), default="json")
    p.add_argument("--out", help="write the report here instead of standard output")
    p.add_argument("--timings", action="store_true", help="include per-step milliseconds (breaks byte-identity)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bihcheck", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run verification scenarios")
    vsub = verify.add_subparsers(dest="target", required=True)

    _common(vsub.add_parser("all", help="every scenario with its default sweep"))

    tube = vsub.add_parser("tube", help="one homogeneous tube")
    tube.add_argument("--family", required=True, choices=list("ABCDE"))
    tube.add_argument("--n", type=int, required=True)
    tube.add_argument("--m", type=int)
    _common(tube)

    chain = vsub.add_parser("chain", help="non-Hopf elimination chain")
    chain.add_argument("--case", type=int, required=True, choices=(1, 2))
    chain.add_argument("--d-samples", type=int, default=5)
    _common(chain)

    ruled = vsub.add_parser("ruled", help="ruled hypersurface minimality")
    ruled.add_argument("--n", type=int, required=True)
    _common(ruled)

    roots = sub.add_parser("roots", help="count, isolate and refine real roots")
    roots.add_argument("--poly", required=True)
    roots.add_argument("--interval", default="(-inf,inf)")
    roots.add_argument("--width", default="1/1000000")
    return parser


def _scenario(args) -> Optional[Scenario]:
    kw = {"seed": args.seed, "precision_bits": args.precision_bits}
    if args.target == "tube":
        if args.family == "A" and args.m is None:
            raise UsageError("family A needs --m")
        return tube_scenario(args.family, args.n, args.m, **kw)
    if args.target == "chain":
        return Scenario(f"thm2-nonhopf-case{args.case}", d_samples=args.d_samples, **kw)
    if args.target == "ruled":
        return Scenario("ruled", n=(args.n,), **kw)
    return None


def _emit(report: Report, args) -> None:
    text = report.to_json(args.timings) if args.format == "json" else report.to_markdown(args.timings)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "roots":
            from .report import roots_report

            sys.stdout.write(roots_report(args.poly, args.interval, args.width))
            return EXIT_PASS
        sc = _scenario(args)
        report = run_all(args.seed, args.precision_bits) if sc is None else run_scenario(sc)
    except ParseError as exc:
        print(f"bihcheck: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ValueError, ZeroDivisionError) as exc:
        print(f"bihcheck: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(report, args)
    return EXIT_PASS if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
