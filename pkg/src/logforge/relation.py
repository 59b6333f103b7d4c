"""Exact integer LLL and an integer-relation finder built on it.

The relation finder uses the usual scaled-column lattice: row i is the unit
vector e_i followed by round(10**ds * x_i).  A short vector in the reduced
basis carries a small integer combination of the inputs in its first n
entries.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence

from .errors import LogforgeError, PrecisionExhaustedError
from .numerics import BigReal, bits_to_digits

DEFAULT_DELTA = Fraction(99, 100)


class RankDeficientError(LogforgeError, ValueError):
    """Basis rows are linearly dependent."""


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def lll_reduce(basis: Sequence[Sequence[int]], delta_param: Fraction = DEFAULT_DELTA) -> list[list[int]]:
    """LLL-reduce the rows of ``basis`` using only integer arithmetic.

    Integral variant: the Gram-Schmidt data is kept as the integers
    d_i (leading Gram determinants) and lambda_ij = d_j mu_ij.
    """
    delta_param = Fraction(delta_param)
    if not Fraction(1, 4) < delta_param < 1:
        raise ValueError("delta_param must lie in (1/4, 1)")
    dp, dq = delta_param.numerator, delta_param.denominator
    b = [[int(c) for c in row] for row in basis]
    n = len(b)
    if n == 0:
        return []
    # 1-based bookkeeping: d[0] = 1, d[i] for rows 1..n
    d = [1] + [0] * n
    lam = [[0] * (n + 1) for _ in range(n + 1)]

    def row(i):
        return b[i - 1]

    def gram(k):
        for j in range(1, k + 1):
            u = _dot(row(k), row(j))
            for i in range(1, j):
                u = (d[i] * u - lam[k][i] * lam[j][i]) // d[i - 1]
            if j < k:
                lam[k][j] = u
            else:
                if u == 0:
                    raise RankDeficientError("basis rows are linearly dependent")
                d[k] = u

    def redi(k, l):
        if 2 * abs(lam[k][l]) > d[l]:
            q = (2 * lam[k][l] + d[l]) // (2 * d[l])
            bk, bl = row(k), row(l)
            for t in range(len(bk)):
                bk[t] -= q * bl[t]
            lam[k][l] -= q * d[l]
            for i in range(1, l):
                lam[k][i] -= q * lam[l][i]

    def swapi(k, kmax):
        b[k - 1], b[k - 2] = b[k - 2], b[k - 1]
        for j in range(1, k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lk = lam[k][k - 1]
        B = (d[k - 2] * d[k] + lk * lk) // d[k - 1]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k] * lam[i][k - 1] - lk * t) // d[k - 1]
            lam[i][k - 1] = (B * t + lk * lam[i][k]) // d[k]
        d[k - 1] = B

    gram(1)
    k, kmax = 2, 1
    while k <= n:
        if k > kmax:
            kmax = k
            gram(k)
        redi(k, k - 1)
        lk = lam[k][k - 1]
        if dq * (d[k] * d[k - 2] + lk * lk) < dp * d[k - 1] * d[k - 1]:
            swapi(k, kmax)
            k = max(2, k - 1)
        else:
            for l in range(k - 2, 0, -1):
                redi(k, l)
            k += 1
    return b


def is_lll_reduced(basis: Sequence[Sequence[int]], delta_param: Fraction = DEFAULT_DELTA) -> bool:
    """Check size reduction and the Lovasz condition with exact rationals."""
    n = len(basis)
    bstar: list[list[Fraction]] = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    norms: list[Fraction] = []
    for i in range(n):
        v = [Fraction(c) for c in basis[i]]
        for j in range(i):
            mu[i][j] = _dot(basis[i], bstar[j]) / norms[j]
            v = [a - mu[i][j] * c for a, c in zip(v, bstar[j])]
        bstar.append(v)
        norms.append(_dot(v, v))
    for i in range(n):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    for k in range(1, n):
        if norms[k] < (Fraction(delta_param) - mu[k][k - 1] ** 2) * norms[k - 1]:
            return False
    return True


def normalize_sign(r: Sequence[int]) -> list[int]:
    """Make the first nonzero entry after r[0] positive (r[0] if the rest is zero)."""
    r = list(r)
    for c in r[1:]:
        if c:
            return r if c > 0 else [-x for x in r]
    return r if r[0] >= 0 else [-x for x in r]


def find_relation(reals: Sequence[BigReal], digits_ds: int) -> Optional[list[int]]:
    """Small integer r with sum r_i x_i ~ 0 at ``digits_ds`` decimal digits.

    Returns None when the shortest reduced vector does not pass the
    detection threshold.
    """
    if digits_ds <= 0:
        raise ValueError("digits_ds must be positive")
    n = len(reals)
    if n < 2:
        raise ValueError("need at least two reals")
    capacity = bits_to_digits(min(x.prec_bits for x in reals))
    if digits_ds > capacity:
        raise PrecisionExhaustedError(
            f"ds = {digits_ds} exceeds the {capacity} digits carried by the inputs"
        )
    scaled = [x.scaled_round(digits_ds) for x in reals]
    lattice = [[int(i == j) for j in range(n)] + [scaled[i]] for i in range(n)]
    red = lll_reduce(lattice)
    r = red[0][:n]
    if not any(r):
        return None
    resid = abs(sum((x * c for x, c in zip(reals, r)), BigReal.from_int(0, reals[0].prec_bits)))
    norm = math.sqrt(sum(c * c for c in r))
    if float(resid * 10 ** digits_ds) > 2.0 ** (n / 2) * max(1.0, norm):
        return None
    return normalize_sign(r)
