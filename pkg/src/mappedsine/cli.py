"""Command-line driver: ``mappedsine {convergence1d, table3d, selftest}``.

Exit status is 0 on success, 2 when a solve fails to converge, and 1 on
usage or I/O errors.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys

from . import selftest
from .bench import CASES_1D, BenchCase1D, run_convergence_1d, run_table_3d
from .exceptions import InvalidInputError
from .report import emit_report

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_CONVERGED = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 by default; 2 is reserved for non-convergence here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text):
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError("basis sizes must be positive integers")
    return values


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = _Parser(prog="mappedsine", description=__doc__.splitlines()[0], formatter_class=fmt)
    parser.add_argument("-v", "--verbose", action="store_true", help="log solver progress")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("convergence1d", formatter_class=fmt,
                       help="1D -u'' + gamma u = f convergence study")
    p.add_argument("--case", choices=CASES_1D, required=True)
    p.add_argument("--k", type=float, default=2.0, help="oscillation wavenumber")
    p.add_argument("--h", type=float, default=2.0, help="algebraic decay exponent")
    p.add_argument("--gamma", type=float, default=2.0, help="screening constant")
    p.add_argument("--n", type=_int_list, default=[16, 32, 64, 128, 256],
                   help="ascending comma-separated basis sizes")
    p.add_argument("--parity", choices=("auto", "full"), default="full",
                   help="auto keeps only the modes allowed by the solution's symmetry")
    p.add_argument("--samples", type=int, default=1000, help="error sample points")
    _add_output_args(p)

    p = sub.add_parser("table3d", formatter_class=fmt,
                       help="Hartree energy of the 3D test density")
    p.add_argument("--ksq", type=float, required=True,
                   help="screening constant k^2 (0 or 1; others need --allow-indefinite)")
    p.add_argument("--n", type=_int_list, default=[15, 25, 37], help="basis sizes per axis")
    p.add_argument("--tol", type=float, default=1e-12, help="relative residual tolerance")
    p.add_argument("--max-iter", type=int, default=None, help="iteration cap (None means 10*N)")
    p.add_argument("--precond", choices=("jacobi", "none"), default="jacobi",
                   help="diagonal preconditioning of the Kronecker-sum system")
    p.add_argument("--allow-indefinite", action="store_true",
                   help="accept ksq values other than 0 and 1, e.g. -1 (expected to fail)")
    _add_output_args(p)

    sub.add_parser("selftest", formatter_class=fmt, help="run the built-in oracle checks")
    return parser


def _add_output_args(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="output path (stdout when omitted)")
    p.add_argument("--no-timing", action="store_true",
                   help="leave wall_time_s blank for byte-identical reruns")


def _convergence1d(args):
    if args.samples < 100:
        raise _UsageError("--samples must be at least 100")
    if any(b <= a for a, b in zip(args.n, args.n[1:])):
        raise _UsageError("--n must be strictly ascending")
    case = BenchCase1D(args.case, k=args.k, h=args.h, gamma=args.gamma)
    records = run_convergence_1d(case, args.n, args.samples, parity=args.parity)
    emit_report(records, args.format, args.out, timing=not args.no_timing)
    failed = any(math.isnan(r.max_norm_error) for r in records)
    return EXIT_NOT_CONVERGED if failed else EXIT_OK


def _table3d(args):
    if args.ksq not in (0.0, 1.0) and not args.allow_indefinite:
        raise _UsageError("--ksq must be 0 or 1 (pass --allow-indefinite for other values)")
    if not args.tol > 0:
        raise _UsageError("--tol must be positive")
    rows = run_table_3d(args.ksq, args.n, tol=args.tol, max_iter=args.max_iter,
                        jacobi=args.precond == "jacobi")
    emit_report(rows, args.format, args.out, timing=not args.no_timing)
    for row in rows:
        r = row.report
        print(f"N={row.N}: converged={str(r.converged).lower()} iterations={r.iterations} "
              f"residual={r.residual_norm:.3e}", file=sys.stderr)
    return EXIT_OK if all(row.report.converged for row in rows) else EXIT_NOT_CONVERGED


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "convergence1d":
            return _convergence1d(args)
        if args.command == "table3d":
            return _table3d(args)
        return EXIT_OK if selftest.run() else EXIT_USAGE
    except (_UsageError, InvalidInputError) as exc:
        print(f"mappedsine: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"mappedsine: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
