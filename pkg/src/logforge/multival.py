"""Multi-valuation systems: n series that together give n logarithms.

Row i of the exponent matrix X defines p_i = prod_j basis_j ** X[i][j], whose
log series S_i satisfies X . c = S with c_j = log basis_j.  Solving with the
exact rational inverse gives every c_j as a rational combination of the S_i.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

from .binsplit import eval_series
from .errors import FactorizationError, SingularMatrixError
from .numerics import BigReal
from .search import SolutionMatrix, validate_basis
from .series import (
    FlintSeries,
    RationalArgument,
    SeriesParams,
    YCruncherSeries,
    bs_cost,
    coeff_bitsize,
    log_series_flint,
    log_series_params,
    split_exponents,
    to_ycruncher,
)

Matrix = tuple[tuple[int, ...], ...]
RatMatrix = tuple[tuple[Fraction, ...], ...]


def invert(X: Sequence[Sequence[int]]) -> RatMatrix:
    """Exact inverse by Gauss-Jordan elimination over the rationals."""
    n = len(X)
    if any(len(r) != n for r in X):
        raise SingularMatrixError("matrix must be square")
    a = [[Fraction(c) for c in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(X)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise SingularMatrixError("exponent matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [c * inv for c in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


@dataclass(frozen=True)
class MultiValuation:
    basis: tuple[int, ...]
    X: SolutionMatrix
    Xinv: RatMatrix
    arguments: tuple[RationalArgument, ...]
    params: tuple[SeriesParams, ...]
    flint: tuple[FlintSeries, ...]
    costs: tuple[float, ...]

    @property
    def n(self) -> int:
        return len(self.basis)

    @property
    def total_cost(self) -> float:
        return sum(self.costs)

    @property
    def per_log_cost(self) -> float:
        return self.total_cost / self.n

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple(coeff_bitsize(a.u, a.v) for a in self.arguments)

    def ycruncher(self) -> tuple[YCruncherSeries, ...]:
        return tuple(to_ycruncher(a.u, a.v) for a in self.arguments)

    def integer_inverse(self) -> bool:
        return all(c.denominator == 1 for row in self.Xinv for c in row)


def build_system(basis: Sequence[int], X: SolutionMatrix | Sequence[Sequence[int]]) -> MultiValuation:
    basis = validate_basis(basis)
    if not isinstance(X, SolutionMatrix):
        X = SolutionMatrix(tuple(tuple(int(c) for c in row) for row in X))
    n = len(basis)
    if X.n != n or any(len(r) != n for r in X.rows):
        raise SingularMatrixError(f"need an {n}x{n} exponent matrix")
    Xinv = invert(X.rows)
    args = tuple(split_exponents(basis, row) for row in X.rows)
    return MultiValuation(
        basis=basis,
        X=X,
        Xinv=Xinv,
        arguments=args,
        params=tuple(log_series_params(a.u, a.v) for a in args),
        flint=tuple(log_series_flint(a.u, a.v) for a in args),
        costs=tuple(bs_cost(a.u, a.v) for a in args),
    )


def _extra_digits(coeffs: Sequence[Fraction]) -> int:
    s = sum(abs(c) for c in coeffs)
    return 2 + (math.ceil(math.log10(s)) if s > 1 else 0)


def series_values(mv: MultiValuation, digits: int, workers: int = 1) -> list[BigReal]:
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(lambda f: eval_series(f, digits), mv.flint))
    return [eval_series(f, digits) for f in mv.flint]


def _combine(coeffs: Sequence[Fraction], values: Sequence[BigReal]) -> BigReal:
    prec = max(v.prec_bits for v in values)
    acc = BigReal.from_int(0, prec)
    for c, v in zip(coeffs, values):
        if c:
            acc = acc + v * c.numerator / c.denominator if c.denominator != 1 else acc + v * c.numerator
    return acc


def evaluate_all(mv: MultiValuation, digits: int, workers: int = 1) -> list[BigReal]:
    """c = Xinv . S, each entry good to ``digits`` decimal digits."""
    extra = max(_extra_digits(row) for row in mv.Xinv)
    values = series_values(mv, digits + extra, workers)
    return [_combine(row, values) for row in mv.Xinv]


def exponent_vector(basis: Sequence[int], target: int) -> list[int]:
    """Exponents of ``target`` over the basis by trial division."""
    if not isinstance(target, int) or target < 1:
        raise FactorizationError(f"target must be a positive integer, got {target!r}")
    e = []
    rest = target
    for p in basis:
        k = 0
        while rest % p == 0:
            rest //= p
            k += 1
        e.append(k)
    if rest != 1:
        raise FactorizationError(f"{target} has a factor {rest} outside the basis {list(basis)}")
    return e


def single_log(mv: MultiValuation, target: int) -> list[Fraction]:
    """Coefficients a with ln(target) = sum a_i S_i."""
    e = exponent_vector(mv.basis, target)
    n = mv.n
    return [sum((Fraction(e[j]) * mv.Xinv[j][i] for j in range(n)), Fraction(0)) for i in range(n)]


def evaluate_combination(mv: MultiValuation, coeffs: Sequence[Fraction], digits: int, workers: int = 1) -> BigReal:
    coeffs = [Fraction(c) for c in coeffs]
    values = series_values(mv, digits + _extra_digits(coeffs), workers)
    return _combine(coeffs, values)


def eval_single_log(mv: MultiValuation, target: int, digits: int, workers: int = 1) -> BigReal:
    if target == 1:
        return BigReal.from_int(0, 64)
    return evaluate_combination(mv, single_log(mv, target), digits, workers)


# -- Machin-type comparison measures --------------------------------------------------


Mode = Literal["atanh", "atan"]


def _machin_d(x: int, mode: Mode) -> int:
    if mode not in ("atanh", "atan"):
        raise ValueError(f"mode must be 'atanh' or 'atan', got {mode!r}")
    if x <= 1:
        raise ValueError(f"Machin arguments must exceed 1, got {x}")
    s = -1 if mode == "atanh" else 1
    return 27 * x * x * (x * x + s) ** 2


def machin_cost(xs: Sequence[int], mode: Mode = "atanh") -> float:
    """Sum of 8 / ln(27/4 x^2 (x^2 -+ 1)^2) over the terms of atanh(1/x) or atan(1/x)."""
    return sum(8.0 / (math.log(_machin_d(x, mode)) - math.log(4)) for x in xs)


def machin_bits(xs: Sequence[int], mode: Mode = "atanh") -> int:
    """Largest bit size of the k^2 denominator coefficient over the term ratios."""
    out = 0
    for x in xs:
        D = _machin_d(x, mode)
        lead = 36 * D // math.gcd(8, D)
        out = max(out, (lead - 1).bit_length())
    return out
