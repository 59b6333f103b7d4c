"""Binary splitting evaluation of hypergeometric-type series.

A range [lo, hi) of the sum  sum A(n)/B(n) prod_{k<n} P(k)/Q(k)  is summarised
by four integers (P, Q, B, T) with

    product over the range = P / Q
    partial sum over the range = T / (B Q)

and two adjacent ranges merge as

    P = Pl Pr,  Q = Ql Qr,  B = Bl Br,  T = Br Qr Tl + Bl Pl Tr.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import gmpy2
from gmpy2 import mpz

from .errors import ConvergenceError
from .numerics import BigReal, digits_to_bits
from .series import FlintSeries, YCruncherSeries, atanh_series, log_series_flint

AnySeries = Union[FlintSeries, YCruncherSeries]

# ranges at most this long are summed directly instead of recursing
_LEAF = 8


@dataclass(frozen=True)
class SplitNode:
    P: int
    Q: int
    B: int
    T: int

    def value(self) -> Fraction:
        return Fraction(int(self.T), int(self.B * self.Q))


def merge(left: SplitNode, right: SplitNode, strip_gcd: bool = False) -> SplitNode:
    P = left.P * right.P
    Q = left.Q * right.Q
    B = left.B * right.B
    T = right.B * right.Q * left.T + left.B * left.P * right.T
    if strip_gcd:
        g = gmpy2.gcd(gmpy2.gcd(P, Q), T)
        if g > 1:
            P, Q, T = P // g, Q // g, T // g
        g = gmpy2.gcd(B, T)
        if g > 1:
            B, T = B // g, T // g
    return SplitNode(P, Q, B, T)


class _Terms:
    """Polynomial evaluators for the FLINT shape, with an index offset."""

    def __init__(self, a, b, p, q, offset: int = 0):
        self.polys = tuple(tuple(mpz(c) for c in poly) for poly in (a, b, p, q))
        self.offset = offset

    @staticmethod
    def _ev(poly, n):
        acc = mpz(0)
        for c in reversed(poly):
            acc = acc * n + c
        return acc

    def at(self, n: int):
        n = mpz(n + self.offset)
        return tuple(self._ev(poly, n) for poly in self.polys)


def _terms_for(series: AnySeries) -> tuple[_Terms, Fraction, Fraction]:
    """Evaluator, global prefactor and limiting term ratio."""
    if isinstance(series, FlintSeries):
        t = _Terms(series.polyA, series.polyB, series.polyP, series.polyQ)
        return t, Fraction(1), series.ratio_limit
    if isinstance(series, YCruncherSeries):
        # shift to n >= 0: A(n) = P(n+1), B(n) = Q(n+1), P'(k) = R(k+1), Q'(k) = Q(k+1)
        t = _Terms(series.polyP, series.polyQ, series.polyR, series.polyQ, offset=1)
        return t, series.coef, series.ratio_limit
    raise TypeError(f"unsupported series type {type(series).__name__}")


def _direct(terms: _Terms, lo: int, hi: int) -> SplitNode:
    a, b, p, q = terms.at(lo)
    P, Q, B, T = p, q, b, a * q
    for n in range(lo + 1, hi):
        a, b, p, q = terms.at(n)
        # merge with the single-term node (p, q, b, a q)
        T = b * q * T + B * P * a * q
        P, Q, B = P * p, Q * q, B * b
    return SplitNode(P, Q, B, T)


def _split(terms: _Terms, lo: int, hi: int, strip_gcd: bool) -> SplitNode:
    if hi - lo <= _LEAF:
        return _direct(terms, lo, hi)
    mid = (lo + hi) // 2
    return merge(_split(terms, lo, mid, strip_gcd), _split(terms, mid, hi, strip_gcd), strip_gcd)


def _tree_leaves(lo: int, hi: int, depth: int) -> list[tuple[int, int]]:
    if depth == 0 or hi - lo <= _LEAF:
        return [(lo, hi)]
    mid = (lo + hi) // 2
    return _tree_leaves(lo, mid, depth - 1) + _tree_leaves(mid, hi, depth - 1)


def _merge_tree(lo: int, hi: int, depth: int, strip_gcd: bool, it) -> SplitNode:
    # walks the same tree shape as _tree_leaves so the result matches serial splitting
    if depth == 0 or hi - lo <= _LEAF:
        return next(it)
    mid = (lo + hi) // 2
    left = _merge_tree(lo, mid, depth - 1, strip_gcd, it)
    right = _merge_tree(mid, hi, depth - 1, strip_gcd, it)
    return merge(left, right, strip_gcd)


def split_range(
    series: AnySeries, lo: int, hi: int, *, strip_gcd: bool = False, workers: int = 1
) -> SplitNode:
    """Binary-splitting node for terms lo .. hi-1 (prefactor not applied)."""
    if not 0 <= lo < hi:
        raise ValueError(f"invalid range [{lo}, {hi})")
    terms, _, _ = _terms_for(series)
    if workers <= 1:
        return _split(terms, lo, hi, strip_gcd)
    depth = max(1, math.ceil(math.log2(workers)) + 1)
    leaves = _tree_leaves(lo, hi, depth)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        nodes = list(pool.map(lambda r: _split(terms, r[0], r[1], strip_gcd), leaves))
    return _merge_tree(lo, hi, depth, strip_gcd, iter(nodes))


def default_workers() -> int:
    env = os.environ.get("LOGFORGE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def term_count(series: AnySeries, digits: int) -> int:
    """Terms needed for ``digits`` correct digits, guard digits included."""
    _, _, rho = _terms_for(series)
    rho = abs(rho)
    if rho >= 1:
        raise ConvergenceError(f"term ratio {rho} does not converge")
    if rho == 0:
        return digits + 2
    decay = math.log(rho.denominator) - math.log(rho.numerator)
    n = math.ceil(digits * math.log(10) / decay) + 1
    guard = 10 + math.ceil(math.log10(n + 1))
    return math.ceil((digits + guard) * math.log(10) / decay) + 2


def guard_digits(terms: int) -> int:
    return 10 + math.ceil(math.log10(terms + 1))


def eval_series(
    series: AnySeries, digits: int, *, strip_gcd: bool = False, workers: int | None = None
) -> BigReal:
    """Value of the series correct to ``digits`` decimal digits."""
    if not isinstance(digits, int) or digits <= 0:
        raise ValueError(f"digits must be a positive integer, got {digits!r}")
    _, pref, _ = _terms_for(series)
    n = term_count(series, digits)
    node = split_range(series, 0, n, strip_gcd=strip_gcd, workers=workers or default_workers())
    prec = digits_to_bits(digits + guard_digits(n))
    num = mpz(node.T) * pref.numerator
    den = mpz(node.B) * node.Q * pref.denominator
    if den < 0:
        num, den = -num, -den
    w = prec + 8
    return BigReal.from_scaled_int(int((num << w) // den), w, prec)


def eval_log(u: int, v: int, digits: int, **kw) -> BigReal:
    return eval_series(log_series_flint(u, v), digits, **kw)


def log_sequence(n_max: int, digits: int, **kw) -> list[BigReal]:
    """[ln 2, ln 3, ..., ln n_max] from ln(n+1) = ln n + 2 atanh(1/(2n+1))."""
    if not isinstance(n_max, int) or n_max < 2:
        raise ValueError(f"n_max must be an integer >= 2, got {n_max!r}")
    if not isinstance(digits, int) or digits <= 0:
        raise ValueError(f"digits must be a positive integer, got {digits!r}")
    extra = math.ceil(math.log10(n_max)) + 2
    out: list[BigReal] = []
    acc = None
    for n in range(1, n_max):
        step = eval_series(atanh_series(1, 2 * n + 1), digits + extra, **kw)
        step = step + step
        acc = step if acc is None else acc + step
        out.append(acc)
    return out

