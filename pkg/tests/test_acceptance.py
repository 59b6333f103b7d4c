"""Acceptance criteria 1-12.  Each test reports a pass/fail line through ``record``."""

import math
import time
from fractions import Fraction

import numpy as np
import pytest
from mpmath import mp, mpf
from mpmath import log as mlog

from logforge import (
    SearchConfig,
    brute_force,
    build_system,
    eval_series,
    evaluate_all,
    ln,
    log_sequence,
    monte_carlo,
    select_full_rank,
    single_log,
)
from logforge.iofmt import report
from logforge.multival import evaluate_combination
from logforge.numerics import digits_to_bits
from logforge.series import bits_feasible, log_series_flint, to_ycruncher

from reference_data import (
    COMBINATIONS,
    DIGIT_TARGETS,
    FIVE_PRIMES,
    FIVE_PRIMES_PER_LOG,
    FIVE_PRIMES_TOTAL,
    FIVE_PRIMES_X64,
    LARGE_BASIS,
    LARGE_BITS,
    LARGE_COMBINATION,
    LARGE_PRIME,
    LARGE_X,
    PRIME_COSTS,
    SYSTEMS,
    frac_rows,
)

PRIMES = (2, 3, 5, 7, 11, 13)
GOLDEN_TOL = Fraction(6, 10)


def _search(basis, bits=64, tol=GOLDEN_TOL, **kw):
    cfg = SearchConfig(basis=tuple(basis), bits_b=bits, tol=tol, **kw)
    pool = monte_carlo(cfg) if "nmax" in kw else brute_force(cfg)
    X = select_full_rank(pool, cfg.n)
    return pool, build_system(cfg.basis, X)


def _row_signs(found, expected):
    """Per-row sign s_i with found_i = s_i * expected_i, or None."""
    signs = []
    for f, e in zip(found, expected):
        if list(f) == list(e):
            signs.append(1)
        elif list(f) == [-c for c in e]:
            signs.append(-1)
        else:
            return None
    return signs


def _oracle(x, digits):
    return ln(x, digits_to_bits(digits + 20)).decimal(digits)


# -- 1, 2 ------------------------------------------------------------------------


@pytest.mark.parametrize("basis", list(SYSTEMS), ids=lambda b: "-".join(map(str, b)))
def test_1_golden_matrices(basis, record):
    ref = SYSTEMS[basis]
    t0 = time.perf_counter()
    _, mv = _search(basis)
    dt = time.perf_counter() - t0
    signs = _row_signs(mv.X.rows, ref["X"])
    ok = signs is not None
    if ok:
        # flipping row i of X flips column i of the inverse
        flipped = [[c * s for c, s in zip(row, signs)] for row in frac_rows(ref["Xinv"])]
        ok = [list(r) for r in mv.Xinv] == flipped
    ok = ok and dt < 60
    record(1, ok, f"{list(basis)} X={[list(r) for r in mv.X.rows]} in {dt:.2f}s")
    assert ok


@pytest.mark.parametrize("basis", list(SYSTEMS), ids=lambda b: "-".join(map(str, b)))
def test_2_golden_costs(basis, record):
    _, mv = _search(basis)
    want = SYSTEMS[basis]["cost"]
    ok = abs(mv.total_cost - want) <= 1e-5
    record(2, ok, f"{list(basis)} total cost {mv.total_cost:.6f} vs {want}")
    assert ok


# -- 3, 4 ------------------------------------------------------------------------

# The reference table for these two systems lists the 128/125 row with a
# common factor 3 left in (alpha, beta, gamma); the reduced form cannot match.
_UNREDUCED = {(2, 5), (2, 3, 5)}


@pytest.mark.parametrize(
    "basis",
    [
        pytest.param(b, marks=pytest.mark.xfail(strict=True, reason="reference row not gcd-reduced"))
        if b in _UNREDUCED
        else b
        for b in SYSTEMS
    ],
    ids=lambda b: "-".join(map(str, b)),
)
def test_3_golden_series_rows(basis, record):
    ref = SYSTEMS[basis]
    mv = build_system(basis, ref["X"])
    got = [list(p.as_tuple()) for p in mv.params]
    bad = [i + 1 for i, (g, e) in enumerate(zip(got, ref["S"])) if g != e]
    detail = f"{list(basis)}" + (f" rows {bad} differ: got {[got[i - 1] for i in bad]}" if bad else "")
    record(3, not bad, detail)
    assert not bad


@pytest.mark.parametrize("basis", list(COMBINATIONS), ids=lambda b: "-".join(map(str, b)))
def test_4_single_log_coefficients(basis, record):
    mv = build_system(basis, SYSTEMS[basis]["X"])
    bad = {t: single_log(mv, t) for t, want in COMBINATIONS[basis].items() if single_log(mv, t) != want}
    record(4, not bad, f"{list(basis)} targets {sorted(COMBINATIONS[basis])}" + (f" bad {bad}" if bad else ""))
    assert not bad


# -- 5 ----------------------------------------------------------------------------


@pytest.mark.parametrize("target", sorted(DIGIT_TARGETS))
def test_5_hundred_thousand_digits(target, record):
    digits = 100_000
    basis = DIGIT_TARGETS[target]
    mv = build_system(basis, SYSTEMS[basis]["X"])
    t0 = time.perf_counter()
    got = evaluate_combination(mv, single_log(mv, target), digits).decimal(digits)
    dt = time.perf_counter() - t0
    want = _oracle(target, digits)
    ok = got == want and dt < 300
    first_bad = next((i for i, (a, b) in enumerate(zip(got, want)) if a != b), None)
    record(5, ok, f"ln {target} via {list(basis)}: {digits} digits in {dt:.2f}s"
           + (f", first mismatch at char {first_bad}" if first_bad is not None else ""))
    assert ok


# -- 6 ----------------------------------------------------------------------------


def _random_arguments(count, seed=20240611):
    rng = np.random.default_rng(seed)
    out = set()
    while len(out) < count:
        v = int(rng.integers(1, 10 ** 6))
        u = int(rng.integers(max(1, math.ceil(v * math.exp(-0.6))), math.floor(v * math.exp(0.6)) + 1))
        if u == v or math.gcd(u, v) != 1 or abs(math.log(u / v)) >= 0.6:
            continue
        out.add((u, v))
    return sorted(out)


def test_6_convention_equivalence(record):
    digits = 60
    args = _random_arguments(200)
    bad = []
    for u, v in args:
        a = eval_series(log_series_flint(u, v), digits)
        b = eval_series(to_ycruncher(u, v), digits)
        if abs(a.to_fraction() - b.to_fraction()) > Fraction(1, 10 ** digits):
            bad.append((u, v))
    record(6, not bad, f"{len(args)} arguments at {digits} digits" + (f", mismatches {bad[:5]}" if bad else ""))
    assert not bad


# -- 7 ----------------------------------------------------------------------------


def test_7_recurrence_sequence(record):
    digits = 1000
    vals = log_sequence(20, digits)
    bad = [k for k, v in enumerate(vals, 2) if v.decimal(digits) != _oracle(k, digits)]
    record("7 (sequence)", not bad, f"ln 2..ln 20 at {digits} digits" + (f", bad {bad}" if bad else ""))
    assert not bad


@pytest.mark.xfail(strict=True, reason="8/ln(27/4 * 29^2 * 840^2) is about 0.362")
def test_7_recurrence_step_cost(record):
    cost = 8 / math.log(Fraction(27, 4) * 29 ** 2 * 840 ** 2)
    ok = cost < 0.17
    record("7 (step cost)", ok, f"n=14 step cost {cost:.6f}, threshold 0.17")
    assert ok


# -- 8 ----------------------------------------------------------------------------


@pytest.mark.parametrize("basis", [(2, 3), (2, 3, 5)], ids=["2-3", "2-3-5"])
def test_8_monte_carlo_reproduction(basis, record):
    _, ref = _search(basis)
    hits = 0
    for seed in range(10):
        try:
            _, mv = _search(basis, scale=Fraction(1, 4), nmax=128, seed=seed)
        except Exception:
            continue
        hits += _row_signs(mv.X.rows, ref.X.rows) is not None
    cfg = SearchConfig(basis=basis, bits_b=64, tol=GOLDEN_TOL, scale=Fraction(1, 4), nmax=128, seed=12345)
    texts = []
    for _ in range(2):
        pool = monte_carlo(cfg)
        texts.append(report(pool, build_system(basis, select_full_rank(pool, cfg.n)), cfg).encode())
    same = texts[0] == texts[1]
    ok = hits >= 9 and same
    record(8, ok, f"{list(basis)} {hits}/10 seeds reproduce brute force, fixed seed byte-identical={same}")
    assert ok


# -- 9 ----------------------------------------------------------------------------

_MC_SETTINGS = {5: dict(scale=Fraction(1, 8), nmax=200, seed=1), 6: dict(scale=Fraction(1, 16), nmax=1000, seed=1)}


@pytest.mark.parametrize("n", sorted(PRIME_COSTS))
def test_9_first_primes_costs(n, record):
    bits, bound = PRIME_COSTS[n]
    basis = PRIMES[:n]
    t0 = time.perf_counter()
    _, mv = _search(basis, bits=bits, **_MC_SETTINGS.get(n, {}))
    dt = time.perf_counter() - t0
    ok = mv.total_cost <= bound + 1e-3 and dt < 1800
    method = "monte carlo" if n in _MC_SETTINGS else "brute force"
    record(9, ok, f"n={n} b={bits} {method}: cost {mv.total_cost:.6f} <= {bound}+1e-3 in {dt:.1f}s")
    assert ok


# -- 10 ---------------------------------------------------------------------------


def test_10_five_primes_64_bit(record):
    digits = 10_000
    _, mv = _search(FIVE_PRIMES, bits=64)
    cost_ok = mv.total_cost <= FIVE_PRIMES_TOTAL + 1e-5 and mv.per_log_cost <= FIVE_PRIMES_PER_LOG + 1e-5
    same_x = _row_signs(mv.X.rows, FIVE_PRIMES_X64) is not None
    vals = evaluate_all(mv, digits)
    bad = [p for p, v in zip(FIVE_PRIMES, vals) if v.decimal(digits) != _oracle(p, digits)]
    ok = cost_ok and not bad
    record(10, ok, f"total {mv.total_cost:.6f}, per log {mv.per_log_cost:.6f}, "
           f"reference X reproduced={same_x}, {digits}-digit mismatches {bad}")
    assert ok


# -- 11 ---------------------------------------------------------------------------


def _naive_pool(basis, bits, tol, scale):
    """Plain double loop over the box, written without the search internals."""
    p, q = basis
    a = Fraction(scale) * bits

    def bound(prime):
        # smallest x with prime**x >= 2**a, compared after raising both sides to a.denominator
        x = 1
        while prime ** (x * a.denominator) < 2 ** a.numerator:
            x += 1
        return x

    bp, bq = bound(p), bound(q)
    mp.prec = 4 * bits
    lp, lq = mlog(p), mlog(q)
    found = []
    for x in range(-bp, bp + 1):
        for y in range(-bq, bq + 1):
            if (x, y) == (0, 0) or x < 0 or (x == 0 and y < 0):
                continue
            num = (p ** x if x > 0 else 1) * (q ** y if y > 0 else 1)
            den = (p ** -x if x < 0 else 1) * (q ** -y if y < 0 else 1)
            rho = Fraction((num - den) ** 6, 108 * num ** 2 * den ** 2 * (num + den) ** 2)
            lead = 36 * rho.denominator // math.gcd(rho.denominator, 18)
            if lead >= 2 ** (bits - 1):
                continue
            eps = abs(x * lp + y * lq)
            if 0 < eps < mpf(tol.numerator) / tol.denominator:
                found.append((eps, (x, y)))
    found.sort()
    return [x for _, x in found]


def test_11_naive_enumeration_oracle(record):
    basis, bits, tol, scale = (2, 3), 32, Fraction(1, 2), Fraction(1, 4)
    pool = brute_force(SearchConfig(basis=basis, bits_b=bits, tol=tol, scale=scale))
    naive = _naive_pool(basis, bits, tol, scale)
    ok = pool.vectors == naive
    record(11, ok, f"{len(pool)} vectors from search, {len(naive)} from the double loop")
    assert ok


# -- 12 ---------------------------------------------------------------------------


def test_12_large_prime_system(record):
    digits = 10_000
    mv = build_system(LARGE_BASIS, LARGE_X)
    bits_ok = all(bits_feasible(a.u, a.v, LARGE_BITS) for a in mv.arguments)
    rank_ok = len(mv.Xinv) == 4
    coeffs = single_log(mv, LARGE_PRIME)
    coeff_ok = coeffs == LARGE_COMBINATION
    value = evaluate_combination(mv, LARGE_COMBINATION, digits).decimal(digits)
    digits_ok = value == _oracle(LARGE_PRIME, digits)
    ok = bits_ok and rank_ok and coeff_ok and digits_ok
    record(12, ok, f"bits {list(mv.bits)} within {LARGE_BITS}, full rank, combination {coeffs}, "
           f"{digits} digits match={digits_ok}; wall-clock figures, 1e11-digit runs and the "
           f"full {LARGE_BITS}-bit search are out of desk scale")
    assert ok
