"""Arbitrary-precision reals and an independent natural-logarithm oracle.

`BigReal` wraps a raw mpmath ``libmp`` float together with an explicit
working precision.  Every operation takes its precision from the operands, so
there is no ambient global precision anywhere in the package.

The logarithm in this module is deliberately computed from a plain Taylor
expansion of atanh with power-of-two argument reduction.  It shares no code
with the hypergeometric series in :mod:`logforge.series`, which lets it serve
as ground truth for them.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

import gmpy2
from mpmath import libmp

from .errors import DomainError

MIN_PREC_BITS = 64
LOG2_10 = math.log2(10)

_RND = libmp.round_nearest

Number = Union[int, Fraction, "BigReal"]


def digits_to_bits(digits: int) -> int:
    """Bits needed to carry ``digits`` decimal digits."""
    return max(MIN_PREC_BITS, math.ceil(digits * LOG2_10))


def bits_to_digits(bits: int) -> int:
    """Whole decimal digits representable in ``bits`` bits."""
    return int(bits / LOG2_10)


class BigReal:
    """Immutable arbitrary-precision real number with a working precision."""

    __slots__ = ("_mpf", "prec_bits")

    def __init__(self, raw: tuple, prec_bits: int):
        if prec_bits < MIN_PREC_BITS:
            raise ValueError(f"prec_bits must be >= {MIN_PREC_BITS}, got {prec_bits}")
        object.__setattr__(self, "_mpf", libmp.mpf_pos(raw, prec_bits, _RND))
        object.__setattr__(self, "prec_bits", int(prec_bits))

    def __setattr__(self, name, value):
        raise AttributeError("BigReal is immutable")

    # construction ---------------------------------------------------------

    @classmethod
    def from_int(cls, n: int, prec_bits: int) -> "BigReal":
        return cls(libmp.from_int(int(n), prec_bits, _RND), prec_bits)

    @classmethod
    def from_fraction(cls, q: Fraction, prec_bits: int) -> "BigReal":
        q = Fraction(q)
        return cls(libmp.from_rational(q.numerator, q.denominator, prec_bits, _RND), prec_bits)

    @classmethod
    def from_scaled_int(cls, m: int, shift: int, prec_bits: int) -> "BigReal":
        """Value ``m * 2**(-shift)``."""
        return cls(libmp.from_man_exp(int(m), -int(shift), prec_bits, _RND), prec_bits)

    @classmethod
    def from_float(cls, x: float, prec_bits: int) -> "BigReal":
        return cls(libmp.from_float(x, prec_bits, _RND), prec_bits)

    @classmethod
    def coerce(cls, x: Number, prec_bits: int) -> "BigReal":
        if isinstance(x, BigReal):
            return x
        if isinstance(x, int):
            return cls.from_int(x, prec_bits)
        if isinstance(x, Fraction):
            return cls.from_fraction(x, prec_bits)
        if isinstance(x, float):
            return cls.from_float(x, prec_bits)
        raise TypeError(f"cannot convert {type(x).__name__} to BigReal")

    def with_prec(self, prec_bits: int) -> "BigReal":
        return BigReal(self._mpf, prec_bits)

    # arithmetic -----------------------------------------------------------

    def _binary(self, other, op, reverse=False):
        if not isinstance(other, (BigReal, int, Fraction, float)):
            return NotImplemented
        prec = max(self.prec_bits, other.prec_bits) if isinstance(other, BigReal) else self.prec_bits
        o = BigReal.coerce(other, prec)
        a, b = (o._mpf, self._mpf) if reverse else (self._mpf, o._mpf)
        return BigReal(op(a, b, prec, _RND), prec)

    def __add__(self, other):
        return self._binary(other, libmp.mpf_add)

    def __radd__(self, other):
        return self._binary(other, libmp.mpf_add, True)

    def __sub__(self, other):
        return self._binary(other, libmp.mpf_sub)

    def __rsub__(self, other):
        return self._binary(other, libmp.mpf_sub, True)

    def __mul__(self, other):
        return self._binary(other, libmp.mpf_mul)

    def __rmul__(self, other):
        return self._binary(other, libmp.mpf_mul, True)

    def __truediv__(self, other):
        return self._binary(other, libmp.mpf_div)

    def __rtruediv__(self, other):
        return self._binary(other, libmp.mpf_div, True)

    def __neg__(self):
        return BigReal(libmp.mpf_neg(self._mpf), self.prec_bits)

    def __pos__(self):
        return self

    def __abs__(self):
        return BigReal(libmp.mpf_abs(self._mpf), self.prec_bits)

    def ldexp(self, e: int) -> "BigReal":
        return BigReal(libmp.mpf_shift(self._mpf, e), self.prec_bits)

    # comparison -----------------------------------------------------------

    def _cmp(self, other) -> int:
        if isinstance(other, BigReal):
            return libmp.mpf_cmp(self._mpf, other._mpf)
        if isinstance(other, int):
            return libmp.mpf_cmp(self._mpf, libmp.from_int(other))
        if isinstance(other, Fraction):
            # exact comparison against a rational
            return _sign(self.to_fraction() - other)
        if isinstance(other, float):
            return libmp.mpf_cmp(self._mpf, libmp.from_float(other))
        raise TypeError(f"cannot compare BigReal with {type(other).__name__}")

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except TypeError:
            return NotImplemented

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __hash__(self):
        return hash(self.to_fraction())

    # conversion -----------------------------------------------------------

    @property
    def sign(self) -> int:
        return libmp.mpf_sign(self._mpf)

    def is_zero(self) -> bool:
        return self._mpf == libmp.fzero

    def __float__(self):
        return libmp.to_float(self._mpf)

    def __bool__(self):
        return not self.is_zero()

    def to_fraction(self) -> Fraction:
        sign, man, exp, _ = self._mpf
        if not man:
            return Fraction(0)
        v = Fraction(int(man)) * (Fraction(2) ** exp)
        return -v if sign else v

    def round_int(self) -> int:
        """Nearest integer (ties away from zero is irrelevant at our scales)."""
        return int(libmp.to_int(libmp.mpf_nint(self._mpf, self.prec_bits + 8, _RND)))

    def scaled_floor(self, digits: int) -> int:
        """floor(self * 10**digits), exact."""
        sign, man, exp, _ = self._mpf
        m = -int(man) if sign else int(man)
        m *= 10 ** digits
        return m << exp if exp >= 0 else m >> -exp

    def scaled_round(self, digits: int) -> int:
        """Nearest integer to self * 10**digits (halves round up)."""
        sign, man, exp, _ = self._mpf
        m = -int(man) if sign else int(man)
        m *= 2 * 10 ** digits
        m = m << exp if exp >= 0 else m >> -exp
        return (m + 1) >> 1

    def decimal(self, digits: int) -> str:
        """Truncated decimal expansion with ``digits`` digits after the point."""
        neg = self.sign < 0
        m = abs(self).scaled_floor(digits)
        s = gmpy2.mpz(m).digits(10).rjust(digits + 1, "0")
        body = s[:-digits] + "." + s[-digits:] if digits else s
        return ("-" if neg else "") + body

    def __str__(self):
        return libmp.to_str(self._mpf, max(1, bits_to_digits(self.prec_bits)))

    def __repr__(self):
        return f"BigReal({libmp.to_str(self._mpf, 20)}, prec_bits={self.prec_bits})"

    def __format__(self, spec):
        if not spec:
            return str(self)
        return format(float(self), spec)


def _sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def machine_eps(prec_bits: int) -> BigReal:
    """Smallest relative spacing at ``prec_bits``: exactly ``2**-prec_bits``."""
    if prec_bits < MIN_PREC_BITS:
        raise ValueError(f"prec_bits must be >= {MIN_PREC_BITS}")
    return BigReal.from_scaled_int(1, prec_bits, prec_bits)


# -- logarithm oracle --------------------------------------------------------


def _atanh_fixed(c: int, d: int, w: int) -> int:
    """floor-ish of atanh(c/d) * 2**w for 0 <= c/d < 1 via the Taylor series."""
    if c == 0:
        return 0
    term = (gmpy2.mpz(c) << w) // d
    total = term
    c2, d2 = gmpy2.mpz(c * c), gmpy2.mpz(d * d)
    k = 1
    while term:
        term = term * c2 // d2
        total += term // (2 * k + 1)
        k += 1
    return int(total)


def _guard_bits(prec_bits: int) -> int:
    return 2 * prec_bits.bit_length() + 24


@lru_cache(maxsize=32)
def _ln2_fixed(w: int) -> int:
    return 2 * _atanh_fixed(1, 3, w)


def _ln_rational_fixed(a: int, b: int, w: int) -> int:
    """ln(a/b) * 2**w for positive integers a, b."""
    # power-of-two reduction: a / (b 2^e) lands in [2/3, 4/3]
    e = a.bit_length() - b.bit_length()
    num, den = (a, b << e) if e >= 0 else (a << -e, b)
    while 3 * num > 4 * den:
        e += 1
        num, den = (a, b << e) if e >= 0 else (a << -e, b)
    while 3 * num < 2 * den:
        e -= 1
        num, den = (a, b << e) if e >= 0 else (a << -e, b)
    c, d = num - den, num + den
    g = math.gcd(c, d)
    c, d = c // g, d // g
    t = _atanh_fixed(abs(c), d, w)
    t = -t if c < 0 else t
    return e * _ln2_fixed(w) + 2 * t


def ln(x: Number, prec_bits: int) -> BigReal:
    """Natural logarithm of a positive int, Fraction or BigReal."""
    if isinstance(x, BigReal):
        q = x.to_fraction()
        prec_bits = max(prec_bits, x.prec_bits)
    else:
        q = Fraction(x)
    if q <= 0:
        raise DomainError(f"logarithm of non-positive value {x!r}")
    if q == 1:
        return BigReal.from_int(0, prec_bits)
    w = prec_bits + _guard_bits(prec_bits)
    fixed = _ln_rational_fixed(q.numerator, q.denominator, w)
    return BigReal.from_scaled_int(fixed, w, prec_bits)


def ln_basis(basis: Iterable[int], prec_bits: int) -> list[BigReal]:
    """Logarithms of the basis integers, each accurate to ``prec_bits``."""
    basis = list(basis)
    for p in basis:
        if not isinstance(p, int) or p <= 1:
            raise DomainError(f"basis elements must be integers > 1, got {p!r}")
    return [ln(p, prec_bits) for p in basis]
