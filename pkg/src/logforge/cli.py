"""Command line front end: ``logforge search|compute|sequence|export``."""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .binsplit import log_sequence
from .errors import InsufficientRankError, LogforgeError
from .iofmt import (
    DEFAULT_RESULTS,
    append_report,
    flint_strings,
    load_system,
    lp_export,
    report,
    ycruncher_export,
)
from .multival import MultiValuation, build_system, eval_single_log, exponent_vector
from .numerics import digits_to_bits, ln
from .search import SearchConfig, SolutionPool, brute_force, monte_carlo, select_full_rank

EXIT_OK, EXIT_ERROR, EXIT_EMPTY = 0, 1, 2


# -- argument types -----------------------------------------------------------


def _int_list(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def _basis(text: str) -> tuple[int, ...]:
    vals = _int_list(text)
    if any(v <= 1 for v in vals):
        raise argparse.ArgumentTypeError("basis integers must be > 1")
    if len(set(vals)) != len(vals):
        raise argparse.ArgumentTypeError("basis integers must be distinct")
    return vals


def _positive_fraction(text: str) -> Fraction:
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return v


def _nonzero_fraction(text: str) -> Fraction:
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if v == 0:
        raise argparse.ArgumentTypeError("scale must be nonzero")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return v


def _threads(args) -> int:
    if getattr(args, "threads", None):
        return args.threads
    env = os.environ.get("LOGFORGE_THREADS", "")
    return int(env) if env.isdigit() and int(env) > 0 else 1


# -- shared helpers -----------------------------------------------------------


def _config(args, basis) -> SearchConfig:
    return SearchConfig(
        basis=tuple(basis),
        bits_b=args.bits,
        tol=args.tol,
        scale=args.scale,
        bounds_override=args.bounds,
        nmax=args.nmax,
        seed=args.seed,
        workers=_threads(args),
        allow_large_n=getattr(args, "allow_large_n", False),
    )


def _run_search(cfg: SearchConfig, method: str) -> tuple[SolutionPool, Optional[MultiValuation]]:
    pool = monte_carlo(cfg) if method == "lll" else brute_force(cfg)
    if len(pool) == 0:
        return pool, None
    X = select_full_rank(pool, cfg.n)
    return pool, build_system(cfg.basis, X)


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def suggest_bases(target: int) -> list[tuple[int, ...]]:
    """Candidate bases for ln(target), tried in order."""
    f = set(_prime_factors(target))
    if f <= {2, 3, 5}:
        if len(f) == 1:
            first = f | ({3} if f == {2} else {2})
        else:
            first = f
    else:
        first = f | {2, 3}
    out = [tuple(sorted(first))]
    wider = tuple(sorted(first | {2, 3, 5}))
    if wider != out[0]:
        out.append(wider)
    return out


def _add_search_args(p: argparse.ArgumentParser, tol_default: str = "0.5") -> None:
    p.add_argument("--bits", type=_positive_int, default=64, help="coefficient bit budget b")
    p.add_argument("--tol", type=_positive_fraction, default=Fraction(tol_default),
                   help="upper bound on |x . log(basis)|")
    p.add_argument("--scale", type=_nonzero_fraction, default=Fraction(1),
                   help="bound scaling; negative fixes the LLL digits for --method lll")
    p.add_argument("--bounds", type=_int_list, default=None, help="explicit exponent bounds")
    p.add_argument("--method", choices=("brute", "lll"), default="brute")
    p.add_argument("--nmax", type=_positive_int, default=2000, help="Monte Carlo sample count")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--threads", type=_positive_int, default=None)


# -- commands -----------------------------------------------------------------


def cmd_search(args) -> int:
    cfg = _config(args, args.basis)
    pool, mv = _run_search(cfg, args.method)
    if mv is None:
        print(f"empty solution pool: {pool.diagnostic}", file=sys.stderr)
        return EXIT_EMPTY
    text = report(pool, mv, cfg)
    sys.stdout.write(text)
    if args.out:
        append_report(text, args.out)
    return EXIT_OK


def _system_for(args, target: int) -> MultiValuation:
    if args.from_report:
        mv = load_system(args.from_report, args.basis)
        exponent_vector(mv.basis, target)
        return mv
    bases = [args.basis] if args.basis else suggest_bases(target)
    last: Optional[Exception] = None
    for basis in bases:
        exponent_vector(basis, target)
        cfg = _config(args, basis)
        try:
            _, mv = _run_search(cfg, args.method)
        except InsufficientRankError as e:
            last = e
            continue
        if mv is not None:
            return mv
    raise LogforgeError(f"no multi-valuation found for {target}: {last or 'empty pool'}")


def cmd_compute(args) -> int:
    target, digits = args.target, args.digits
    if target == 1:
        print("0." + "0" * digits)
        return EXIT_OK
    mv = _system_for(args, target)
    value = eval_single_log(mv, target, digits, workers=_threads(args))
    text = value.decimal(digits)
    print(text)
    if args.verify:
        ref = ln(target, digits_to_bits(digits + 20)).decimal(digits)
        if ref[-20:] != text[-20:]:
            print(f"verification FAILED: oracle ends ...{ref[-20:]}", file=sys.stderr)
            return EXIT_ERROR
        print("verified: last 20 digits agree with the independent oracle", file=sys.stderr)
    return EXIT_OK


def cmd_sequence(args) -> int:
    vals = log_sequence(args.n_max, args.digits)
    for k, v in enumerate(vals, 2):
        print(f"ln({k}) = {v.decimal(args.digits)}")
    return EXIT_OK


def cmd_export(args) -> int:
    fmt = args.format
    if fmt == "lp":
        if not args.basis:
            raise LogforgeError("lp export needs a basis")
        bounds = args.bounds
        sys.stdout.write(lp_export(args.basis, args.bits, args.tol, args.scale, args.epsil, bounds))
        return EXIT_OK
    if args.from_report:
        mv = load_system(args.from_report, args.basis)
        pool, cfg = None, None
    elif args.basis:
        cfg = _config(args, args.basis)
        pool, mv = _run_search(cfg, args.method)
        if mv is None:
            print(f"empty solution pool: {pool.diagnostic}", file=sys.stderr)
            return EXIT_EMPTY
    else:
        raise LogforgeError("give a basis or --from-report")
    if fmt == "flint":
        for f in mv.flint:
            print("\n".join(flint_strings(f)))
    elif fmt == "ycruncher":
        sys.stdout.write(ycruncher_export(mv))
    else:
        sys.stdout.write(report(pool, mv, cfg))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="logforge", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("search", help="search multi-valuation formulas for a basis")
    p.add_argument("basis", type=_basis, help="comma-separated integers, e.g. 2,3,5")
    _add_search_args(p)
    p.add_argument("--out", default=DEFAULT_RESULTS, help="results file to append to ('' to skip)")
    p.add_argument("--allow-large-n", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("compute", help="compute ln(target) to many digits")
    p.add_argument("target", type=_positive_int)
    p.add_argument("--digits", type=_positive_int, default=100)
    p.add_argument("--basis", type=_basis, default=None)
    p.add_argument("--from-report", default=None, metavar="FILE")
    p.add_argument("--verify", action="store_true")
    _add_search_args(p, tol_default="0.6")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("sequence", help="ln 2 .. ln n_max by the atanh recurrence")
    p.add_argument("n_max", type=int)
    p.add_argument("--digits", type=_positive_int, default=50)
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("export", help="export a system as flint, ycruncher, lp or report")
    p.add_argument("basis", type=_basis, nargs="?", default=None)
    p.add_argument("--format", choices=("flint", "ycruncher", "lp", "report"), required=True)
    p.add_argument("--from-report", default=None, metavar="FILE")
    p.add_argument("--epsil", type=_positive_fraction, default=Fraction(5, 10 ** 6))
    _add_search_args(p, tol_default="0.6")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "sequence" and args.n_max < 2:
        parser.error("n_max must be >= 2")
    try:
        return args.func(args)
    except (LogforgeError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
