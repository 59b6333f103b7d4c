"""Search for small exponent vectors x with |x . log(basis)| tiny.

Two searches feed the same sorted pool of feasible solutions:

* ``brute_force`` scans the bounded exponent box with exact pruning.
* ``monte_carlo`` plants a random trap value next to the logarithms and
  collects whatever integer relations the lattice reduction reports.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import (
    CalibrationError,
    DomainError,
    InsufficientRankError,
    PrecisionExhaustedError,
    SearchBudgetError,
)
from .numerics import BigReal, bits_to_digits, ln_basis
from .relation import find_relation, normalize_sign
from .series import RationalArgument, bs_cost, coeff_bitsize, lead_denominator, split_exponents

# tol must keep every candidate u/v strictly inside the log series domain
MAX_TOL = math.log(7 + 4 * math.sqrt(3))
DEFAULT_BUDGET = 2 ** 33
MAX_BRUTE_N = 8
CALIBRATION_PROBES = 5


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def validate_basis(basis: Sequence[int]) -> tuple[int, ...]:
    basis = tuple(basis)
    if not basis:
        raise DomainError("basis must not be empty")
    for p in basis:
        if not isinstance(p, (int, np.integer)) or isinstance(p, bool) or p <= 1:
            raise DomainError(f"basis elements must be integers > 1, got {p!r}")
    basis = tuple(int(p) for p in basis)
    for i, p in enumerate(basis):
        for q in basis[i + 1:]:
            if math.gcd(p, q) != 1:
                raise DomainError(f"basis elements must be pairwise coprime ({p}, {q})")
    return basis


@dataclass(frozen=True)
class SearchConfig:
    basis: tuple[int, ...]
    bits_b: int = 64
    tol: Fraction = Fraction(1, 2)
    scale: Fraction = Fraction(1)
    bounds_override: Optional[tuple[int, ...]] = None
    nmax: int = 2000
    seed: Optional[int] = None
    prec_bits: Optional[int] = None
    probes: int = CALIBRATION_PROBES
    budget: int = DEFAULT_BUDGET
    allow_large_n: bool = False
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "basis", validate_basis(self.basis))
        object.__setattr__(self, "tol", as_fraction(self.tol))
        object.__setattr__(self, "scale", as_fraction(self.scale))
        if not isinstance(self.bits_b, int) or self.bits_b < 2:
            raise ValueError(f"bits_b must be an integer >= 2, got {self.bits_b!r}")
        if not 0 < self.tol < MAX_TOL:
            raise ValueError(f"tol must lie in (0, {MAX_TOL:.6f}), got {float(self.tol)}")
        if self.scale == 0:
            raise ValueError("scale must be nonzero")
        if self.nmax < 1:
            raise ValueError("nmax must be >= 1")
        if self.bounds_override is not None:
            b = tuple(int(x) for x in self.bounds_override)
            if len(b) != len(self.basis) or any(x <= 0 for x in b):
                raise ValueError("bounds must be positive, one per basis element")
            object.__setattr__(self, "bounds_override", b)
        if self.seed is not None and not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.prec_bits is None:
            object.__setattr__(self, "prec_bits", max(64, 2 * self.bits_b))

    @property
    def n(self) -> int:
        return len(self.basis)

    def bounds(self) -> tuple[int, ...]:
        if self.bounds_override is not None:
            return self.bounds_override
        return tuple(default_bounds(self.basis, self.bits_b, self.scale))


@dataclass(frozen=True)
class FeasibleSolution:
    x: tuple[int, ...]
    epsilon: BigReal
    cost: float
    bits: int

    def argument(self, basis: Sequence[int]) -> RationalArgument:
        return split_exponents(basis, self.x)

    def sort_key(self):
        return (self.epsilon.to_fraction(), self.x)


@dataclass
class SolutionPool:
    solutions: list[FeasibleSolution]
    method: str = "brute"
    seed: Optional[int] = None
    trap: Optional[tuple[int, int]] = None
    diagnostic: str = ""

    def __len__(self):
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)

    def __getitem__(self, i):
        return self.solutions[i]

    @property
    def vectors(self) -> list[tuple[int, ...]]:
        return [s.x for s in self.solutions]


@dataclass(frozen=True)
class SolutionMatrix:
    rows: tuple[tuple[int, ...], ...]
    pool_indices: tuple[int, ...] = field(default=())

    @property
    def n(self) -> int:
        return len(self.rows)


# -- bounds -------------------------------------------------------------------


def default_bounds(basis: Sequence[int], bits_b: int, scale=1) -> list[int]:
    """X_j = ceil(scale * b * ln 2 / ln p_j), decided with exact integer powers."""
    scale = as_fraction(scale)
    if scale <= 0:
        raise ValueError("bounds need a positive scale")
    a, c = (scale * bits_b).numerator, (scale * bits_b).denominator
    out = []
    for p in validate_basis(basis):
        # smallest X with p**(X c) >= 2**a
        x = max(1, math.floor(a / (c * math.log2(p))) - 1)
        while x > 0 and p ** ((x - 1) * c) >= 1 << a:
            x -= 1
        while p ** (x * c) < 1 << a:
            x += 1
        out.append(x)
    return out


# -- shared candidate checks -------------------------------------------------------------


def _feasible(
    basis: Sequence[int], x: tuple[int, ...], logs: Sequence[BigReal], tol: Fraction, bits_b: int
) -> Optional[FeasibleSolution]:
    if not any(x):
        return None
    arg = split_exponents(basis, x)
    if lead_denominator(arg.u, arg.v) >= 1 << (bits_b - 1):
        return None
    acc = BigReal.from_int(0, logs[0].prec_bits)
    for e, c in zip(x, logs):
        if e:
            acc = acc + c * e
    eps = abs(acc)
    if not (eps > 0 and eps < tol):
        return None
    return FeasibleSolution(x, eps, bs_cost(arg.u, arg.v), coeff_bitsize(arg.u, arg.v))


def _sorted_pool(sols, **meta) -> SolutionPool:
    uniq = {s.x: s for s in sols}
    return SolutionPool(sorted(uniq.values(), key=FeasibleSolution.sort_key), **meta)


# -- brute force --------------------------------------------------------------


def _scan(basis, bounds, bits_b, tol, flogs, first_range) -> list[tuple[int, ...]]:
    """Candidate vectors in the box passing the float prefilter and the bit bound.

    For pairwise coprime bases the reduced denominator of rho is at least
    (uv(u+v))^2 / 16, so L >= (uv(u+v))^2 / 8 and any partial vector with
    (uv(u+v))^2 >= 2^(b+2) cannot be completed into a feasible one.
    """
    n = len(basis)
    limit = 1 << (bits_b + 2)
    tolf = float(tol) * (1 + 1e-9) + 1e-12
    rem = [0.0] * (n + 1)
    for j in range(n - 1, -1, -1):
        rem[j] = rem[j + 1] + bounds[j] * flogs[j]
    out: list[tuple[int, ...]] = []
    x = [0] * n

    def too_big(u, v):
        w = u * v * (u + v)
        return w * w >= limit

    def values(i, s, zero_so_far):
        slack = tolf + rem[i + 1]
        c = flogs[i]
        lo = max(-bounds[i], math.ceil((-slack - s) / c))
        hi = min(bounds[i], math.floor((slack - s) / c))
        if zero_so_far:
            lo = max(lo, 0)
        return lo, hi

    def visit(i, s, u, v, zero_so_far):
        lo, hi = values(i, s, zero_so_far)
        if i == 0 and first_range is not None:
            lo, hi = max(lo, first_range[0]), min(hi, first_range[1])
        if lo > hi:
            return
        p = basis[i]
        # walk outward from the value closest to zero so the bit bound can cut
        if lo <= 0 <= hi:
            runs = (range(0, hi + 1), range(-1, lo - 1, -1))
        elif lo > 0:
            runs = (range(lo, hi + 1),)
        else:
            runs = (range(hi, lo - 1, -1),)
        for run in runs:
            for e in run:
                if e > 0:
                    uu, vv = u * p ** e, v
                elif e < 0:
                    uu, vv = u, v * p ** (-e)
                else:
                    uu, vv = u, v
                if too_big(uu, vv):
                    break
                x[i] = e
                if i == n - 1:
                    if not (zero_so_far and e == 0):
                        out.append(tuple(x))
                else:
                    visit(i + 1, s + e * flogs[i], uu, vv, zero_so_far and e == 0)
        x[i] = 0

    visit(0, 0.0, 1, 1, True)
    return out


def brute_force(config: SearchConfig) -> SolutionPool:
    """Every sign-normalized feasible vector in the bounded box, sorted by epsilon."""
    basis, n = config.basis, config.n
    if n >= MAX_BRUTE_N and not config.allow_large_n:
        raise SearchBudgetError(
            f"brute force is limited to n < {MAX_BRUTE_N}; use monte_carlo or allow_large_n"
        )
    if config.scale <= 0 and config.bounds_override is None:
        raise ValueError("brute force needs a positive scale or explicit bounds")
    bounds = config.bounds()
    nominal = math.prod(2 * b + 1 for b in bounds)
    if nominal > config.budget:
        raise SearchBudgetError(
            f"exponent box has {nominal} points, over the budget of {config.budget}; "
            "reduce scale or pass smaller bounds"
        )
    logs = ln_basis(basis, config.prec_bits)
    flogs = [float(c) for c in logs]
    workers = max(1, config.workers)
    if workers == 1:
        cands = _scan(basis, bounds, config.bits_b, config.tol, flogs, None)
    else:
        edges = np.linspace(-bounds[0], bounds[0] + 1, workers + 1).astype(int)
        chunks = [(int(a), int(b) - 1) for a, b in zip(edges[:-1], edges[1:]) if b > a]
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = ex.map(lambda r: _scan(basis, bounds, config.bits_b, config.tol, flogs, r), chunks)
            cands = [c for part in parts for c in part]
    sols = []
    for x in cands:
        s = _feasible(basis, x, logs, config.tol, config.bits_b)
        if s is not None:
            sols.append(s)
    diag = "" if sols else "no feasible vector in the box; raise tol or bits"
    return _sorted_pool(sols, method="brute", diagnostic=diag)


# -- Monte Carlo ----------------------------------------------------------------


def _uniform_bits(seed: int, key: tuple[int, ...]) -> int:
    """64 random bits from a Philox stream keyed by (seed, key)."""
    ss = np.random.SeedSequence(seed, spawn_key=key)
    gen = np.random.Generator(np.random.Philox(ss))
    return int(gen.integers(0, 2 ** 64, dtype=np.uint64, endpoint=False))


def _trap(seed: int, key: tuple[int, ...], exponent: int, prec_bits: int) -> BigReal:
    """w = U * 2^-prec * 10^exponent with U uniform in (0, 1]."""
    m = (_uniform_bits(seed, key) + 1) * 10 ** exponent
    return BigReal.from_scaled_int(m, 64 + prec_bits, prec_bits)


def _nontrivial(r: Optional[list[int]]) -> bool:
    return r is not None and any(r[1:])


def initial_ds(n: int, bits_b: int, scale) -> int:
    scale = as_fraction(scale)
    if scale < 0:
        return math.ceil(-scale)
    return max(1, math.ceil(math.log10(float(bits_b * scale)) * (n + 1)))


def calibrate_trap(
    basis: Sequence[int],
    prec_bits: int,
    scale=Fraction(1, 8),
    *,
    bits_b: Optional[int] = None,
    seed: int = 0,
    probes: int = CALIBRATION_PROBES,
    logs: Optional[Sequence[BigReal]] = None,
) -> tuple[int, int]:
    """Smallest (d_s, k) for which a random trap 10^k f_p U gives a real detection."""
    basis = validate_basis(basis)
    if bits_b is None:
        bits_b = prec_bits // 2
    if logs is None:
        logs = ln_basis(basis, prec_bits)
    capacity = bits_to_digits(prec_bits)
    ds = initial_ds(len(basis), bits_b, scale)
    draw = 0
    while ds <= capacity:
        for j in range(1, capacity + 1):
            for _ in range(probes):
                w = _trap(seed, (0, draw), j, prec_bits)
                draw += 1
                if _nontrivial(find_relation([w, *logs], ds)):
                    return j, ds
        ds += 1
    raise CalibrationError(
        f"no non-trivial detection up to ds = {capacity} digits at {prec_bits} bits; "
        "raise the working precision"
    )


def _sample(seed, i, k, ds, logs, prec) -> list[tuple[int, ...]]:
    found = []
    for j in range(4):
        for l in range(4):
            w = _trap(seed, (1, i, j, l), k + j, prec)
            try:
                r = find_relation([w, *logs], ds + l)
            except PrecisionExhaustedError:
                continue
            if r is None:
                continue
            tail = r[1:]
            if any(tail):
                found.append(tuple(normalize_sign([0, *tail])[1:]))
    return found


def monte_carlo(config: SearchConfig) -> SolutionPool:
    """Randomized lattice-reduction search; reproducible for a fixed seed."""
    seed = config.seed if config.seed is not None else time.time_ns() % 2 ** 64
    prec = config.prec_bits
    logs = ln_basis(config.basis, prec)
    k, ds = calibrate_trap(
        config.basis, prec, config.scale, bits_b=config.bits_b, seed=seed,
        probes=config.probes, logs=logs,
    )
    workers = max(1, config.workers)
    idx = range(1, config.nmax + 1)
    if workers == 1:
        batches = [_sample(seed, i, k, ds, logs, prec) for i in idx]
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            batches = list(ex.map(lambda i: _sample(seed, i, k, ds, logs, prec), idx))
    cands = sorted({x for b in batches for x in b})
    sols = []
    for x in cands:
        s = _feasible(config.basis, x, logs, config.tol, config.bits_b)
        if s is not None:
            sols.append(s)
    diag = "" if sols else (
        f"no feasible relation in {config.nmax} samples; "
        "decrease |scale| or increase nmax, ds or bits"
    )
    return _sorted_pool(sols, method="lll", seed=seed, trap=(k, ds), diagnostic=diag)


# -- selection ----------------------------------------------------------------------


def _reduce_against(echelon: list[tuple[int, list[Fraction]]], row: Sequence[int]) -> list[Fraction]:
    v = [Fraction(c) for c in row]
    for piv, e in echelon:
        if v[piv]:
            f = v[piv] / e[piv]
            v = [a - f * b for a, b in zip(v, e)]
    return v


def select_full_rank(pool: SolutionPool | Sequence[FeasibleSolution], n: int) -> SolutionMatrix:
    """Greedy scan in pool order keeping each row that raises the rank."""
    echelon: list[tuple[int, list[Fraction]]] = []
    rows, picked = [], []
    for i, sol in enumerate(pool):
        x = sol.x if isinstance(sol, FeasibleSolution) else tuple(sol)
        if len(x) != n:
            raise ValueError("pool vectors do not match n")
        v = _reduce_against(echelon, x)
        piv = next((j for j, c in enumerate(v) if c), None)
        if piv is None:
            continue
        echelon.append((piv, v))
        rows.append(tuple(x))
        picked.append(i)
        if len(rows) == n:
            return SolutionMatrix(tuple(rows), tuple(picked))
    raise InsufficientRankError(
        f"pool spans rank {len(rows)} < {n}; increase tol or nmax"
    )
