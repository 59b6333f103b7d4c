"""Hypergeometric series definitions for log(u/v), atanh(d/t) and atan(d/t).

Two summation conventions are produced for the same sums:

* FLINT form:  sum_{n>=0} A(n)/B(n) * prod_{k<n} P(k)/Q(k)
* y-cruncher form:  (coefP/coefD) * sum_{n>=1} P(n)/R(n) * prod_{k=1..n} R(k)/Q(k)

Polynomials are dense tuples of integer coefficients in ascending degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ConvergenceError, DegenerateArgumentError, DomainError

Poly = tuple[int, ...]
ExponentVector = tuple[int, ...]


# -- small polynomial helpers -------------------------------------------------


def poly_eval(p: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_mul(a: Sequence[int], b: Sequence[int]) -> Poly:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def poly_scale(p: Sequence[int], c: int) -> Poly:
    return _trim([c * x for x in p])


def poly_shift(p: Sequence[int], s: int) -> Poly:
    """Coefficients of p(n + s)."""
    out: list[int] = [0]
    for c in reversed(p):
        # out = out * (n + s) + c
        nxt = [0] * (len(out) + 1)
        for i, x in enumerate(out):
            nxt[i] += s * x
            nxt[i + 1] += x
        nxt[0] += c
        out = nxt
    return _trim(out)


def _trim(p: Sequence[int]) -> Poly:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(int(c) for c in p)


# -- data types ---------------------------------------------------------------


@dataclass(frozen=True)
class RationalArgument:
    """p = u/v with u, v positive, coprime and distinct."""

    u: int
    v: int

    def __post_init__(self):
        _check_uv(self.u, self.v)

    @property
    def value(self) -> Fraction:
        return Fraction(self.u, self.v)


@dataclass(frozen=True)
class SeriesParams:
    """(alpha, beta, gamma, nu, delta) so that

    S = (1/gamma) * sum_{k>=1} (alpha k + beta)/(k(2k-1))
            * prod_{j=1..k} 18 nu j(2j-1) / (delta (6j-1)(6j-5))
    """

    alpha: int
    beta: int
    gamma: int
    nu: int
    delta: int

    def __post_init__(self):
        if self.gamma == 0:
            raise ValueError("gamma must be nonzero")
        if self.delta <= 0:
            raise ValueError("delta must be positive")

    @property
    def rho(self) -> Fraction:
        return Fraction(self.nu, self.delta)

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.alpha, self.beta, self.gamma, self.nu, self.delta)

    def to_ycruncher(self) -> "YCruncherSeries":
        """The same sum written in the y-cruncher shape (unreduced)."""
        g = self.gamma
        return YCruncherSeries(
            coefP=1 if g > 0 else -1,
            coefD=abs(g),
            polyP=poly_scale((self.beta, self.alpha), 18 * self.nu),
            polyR=poly_scale((0, -1, 2), 18 * self.nu),
            polyQ=poly_scale((5, -36, 36), self.delta),
        )


@dataclass(frozen=True)
class FlintSeries:
    polyA: Poly
    polyB: Poly
    polyP: Poly
    polyQ: Poly

    def __post_init__(self):
        for k in range(len(self.polyQ) + 1):
            if poly_eval(self.polyQ, k) == 0:
                raise ValueError("Q vanishes at a non-negative integer")

    @property
    def ratio_limit(self) -> Fraction:
        """lim P(k)/Q(k); the geometric decay rate of the terms."""
        if len(self.polyP) != len(self.polyQ):
            return Fraction(0)
        return Fraction(self.polyP[-1], self.polyQ[-1])

    def term(self, n: int) -> Fraction:
        t = Fraction(poly_eval(self.polyA, n), poly_eval(self.polyB, n))
        for k in range(n):
            t *= Fraction(poly_eval(self.polyP, k), poly_eval(self.polyQ, k))
        return t

    def partial_sum(self, terms: int) -> Fraction:
        s, prod = Fraction(0), Fraction(1)
        for n in range(terms):
            s += prod * Fraction(poly_eval(self.polyA, n), poly_eval(self.polyB, n))
            prod *= Fraction(poly_eval(self.polyP, n), poly_eval(self.polyQ, n))
        return s


@dataclass(frozen=True)
class YCruncherSeries:
    coefP: int
    coefD: int
    polyP: Poly
    polyR: Poly
    polyQ: Poly

    def __post_init__(self):
        if self.coefD == 0:
            raise ValueError("coefD must be nonzero")

    @property
    def coef(self) -> Fraction:
        return Fraction(self.coefP, self.coefD)

    @property
    def ratio_limit(self) -> Fraction:
        if len(self.polyR) != len(self.polyQ):
            return Fraction(0)
        return Fraction(self.polyR[-1], self.polyQ[-1])

    def partial_sum(self, terms: int) -> Fraction:
        """coef * sum_{n=1..terms} P(n)/Q(n) prod_{k<n} R(k)/Q(k)."""
        s, prod = Fraction(0), Fraction(1)
        for n in range(1, terms + 1):
            q = poly_eval(self.polyQ, n)
            s += prod * Fraction(poly_eval(self.polyP, n), q)
            prod *= Fraction(poly_eval(self.polyR, n), q)
        return self.coef * s


# -- validation ---------------------------------------------------------------


def _check_uv(u: int, v: int) -> None:
    if not isinstance(u, int) or not isinstance(v, int):
        raise DomainError("u and v must be integers")
    if u <= 0 or v <= 0:
        raise DomainError(f"u and v must be positive, got {u}/{v}")
    if u == v:
        raise DegenerateArgumentError("u = v gives log 1 = 0, a degenerate series")
    if math.gcd(u, v) != 1:
        raise DomainError(f"u and v must be coprime, got {u}/{v}")


def _check_dt(d: int, t: int) -> None:
    if not isinstance(d, int) or not isinstance(t, int):
        raise DomainError("d and t must be integers")
    if t <= 0:
        raise DomainError(f"t must be positive, got {t}")
    if d == 0:
        raise DegenerateArgumentError("d = 0 gives a zero series")
    if math.gcd(d, t) != 1:
        raise DomainError(f"d and t must be coprime, got {d}/{t}")


def in_log_domain(u: int, v: int) -> bool:
    """u/v inside |x - 7| < 4 sqrt 3, i.e. u^2 - 14uv + v^2 < 0."""
    return u * u - 14 * u * v + v * v < 0


def _reduced(num: int, den: int) -> tuple[int, int]:
    q = Fraction(num, den)
    return q.numerator, q.denominator


# -- log series ---------------------------------------------------------------


def convergence_rate(u: int, v: int) -> Fraction:
    """rho = (u-v)^6 / (108 u^2 v^2 (u+v)^2) in lowest terms."""
    if u == v:
        raise DegenerateArgumentError("u = v has zero convergence rate")
    return Fraction((u - v) ** 6, 108 * u * u * v * v * (u + v) ** 2)


def log_series_params(u: int, v: int) -> SeriesParams:
    _check_uv(u, v)
    s, m = u + v, u - v
    a = -2 * s * (u * u - 14 * u * v + v * v) * (u * u + 4 * u * v + v * v)
    b = s ** 3 * (u * u - 8 * u * v + v * v)
    c = 2 * m ** 5
    g = math.gcd(math.gcd(a, b), c)
    rho = convergence_rate(u, v)
    return SeriesParams(a // g, b // g, c // g, rho.numerator, rho.denominator)


def _log_ratio(u: int, v: int) -> tuple[int, int]:
    # rho' = 18 rho
    return _reduced((u - v) ** 6, 6 * u * u * v * v * (u + v) ** 2)


def log_series_flint(u: int, v: int) -> FlintSeries:
    _check_uv(u, v)
    if not in_log_domain(u, v):
        raise ConvergenceError(f"{u}/{v} lies outside the log series convergence domain")
    numf, denf = _reduced(-(u - v), 12 * u * u * v * v * (u + v))
    p1 = (
        u ** 4 - 14 * u ** 3 * v - 94 * u * u * v * v - 14 * u * v ** 3 + v ** 4,
        2 * (u * u - 14 * u * v + v * v) * (u * u + 4 * u * v + v * v),
    )
    num, den = _log_ratio(u, v)
    return FlintSeries(
        polyA=poly_scale(p1, numf),
        polyB=poly_scale((5, 36, 36), denf),
        polyP=poly_scale((1, 3, 2), num),
        polyQ=poly_scale((5, 36, 36), den),
    )


def to_ycruncher(u: int, v: int) -> YCruncherSeries:
    _check_uv(u, v)
    if not in_log_domain(u, v):
        raise ConvergenceError(f"{u}/{v} lies outside the log series convergence domain")
    num, den = _log_ratio(u, v)
    cp, cd = _reduced(-(u + v) * num, 2 * (u - v) ** 5)
    p = (
        -((u + v) ** 2) * (u * u - 8 * u * v + v * v),
        2 * (u * u - 14 * u * v + v * v) * (u * u + 4 * u * v + v * v),
    )
    return YCruncherSeries(
        coefP=cp,
        coefD=cd,
        polyP=_trim(p),
        polyR=poly_scale((0, -1, 2), num),
        polyQ=poly_scale((5, -36, 36), den),
    )


def bs_cost(u: int, v: int) -> float:
    """Binary splitting cost -8 / ln(rho)."""
    rho = convergence_rate(u, v)
    if rho >= 1:
        raise ConvergenceError(f"rate {rho} >= 1: the series for {u}/{v} diverges")
    return -8.0 / (math.log(rho.numerator) - math.log(rho.denominator))


def lead_denominator(u: int, v: int) -> int:
    """Leading coefficient of the reduced denominator of 18 rho k(2k-1)/((6k-1)(6k-5))."""
    rho = convergence_rate(u, v)
    d = rho.denominator
    return 36 * d // math.gcd(d, 18)


def coeff_bitsize(u: int, v: int) -> int:
    return (lead_denominator(u, v) - 1).bit_length()


def bits_feasible(u: int, v: int, bits: int) -> bool:
    return lead_denominator(u, v) < (1 << (bits - 1))


def split_exponents(basis: Sequence[int], x: Sequence[int]) -> RationalArgument:
    if len(basis) != len(x):
        raise ValueError("basis and exponent vector differ in length")
    if not any(x):
        raise DegenerateArgumentError("the all-zero exponent vector is trivial")
    u = v = 1
    for p, e in zip(basis, x):
        if e > 0:
            u *= p ** e
        elif e < 0:
            v *= p ** (-e)
    g = math.gcd(u, v)
    return RationalArgument(u // g, v // g)


# -- atanh / atan ---------------------------------------------------------------


def atanh_series(d: int, t: int) -> FlintSeries:
    _check_dt(d, t)
    d2, t2 = d * d, t * t
    w = t2 - d2
    if not 4 * d2 ** 3 < 27 * t2 * w * w:
        raise ConvergenceError(f"|{d}/{t}| >= sqrt(3)/2: atanh series diverges")
    a, b = _reduced(d, 3 * t * w * w)
    p2 = (15 * t2 * t2 - 25 * t2 * d2 + 8 * d2 * d2, 2 * (3 * t2 - 4 * d2) * (3 * t2 - d2))
    num, den = _reduced(8 * d2 ** 3, 3 * t2 * w * w)
    return FlintSeries(
        polyA=poly_scale(p2, a),
        polyB=poly_scale((5, 36, 36), b),
        polyP=poly_scale((1, 3, 2), num),
        polyQ=poly_scale((5, 36, 36), den),
    )


def atan_series(d: int, t: int) -> FlintSeries:
    _check_dt(d, t)
    d2, t2 = d * d, t * t
    w = t2 + d2
    # exact form of |ratio limit| < 1, equivalent to |d/t| < 2.90578...
    if not 4 * d2 ** 3 < 27 * t2 * w * w:
        raise ConvergenceError(f"|{d}/{t}| outside the atan series convergence domain")
    a, b = _reduced(d, 3 * t * w * w)
    p3 = (15 * t2 * t2 + 25 * t2 * d2 + 8 * d2 * d2, 2 * (3 * t2 + 4 * d2) * (3 * t2 + d2))
    num, den = _reduced(-8 * d2 ** 3, 3 * t2 * w * w)
    return FlintSeries(
        polyA=poly_scale(p3, a),
        polyB=poly_scale((5, 36, 36), b),
        polyP=poly_scale((1, 3, 2), num),
        polyQ=poly_scale((5, 36, 36), den),
    )
