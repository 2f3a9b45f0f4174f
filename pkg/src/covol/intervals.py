"""Exact-rational interval arithmetic.

Every analytic claim in the package is carried by a :class:`RationalInterval`,
a closed interval with :class:`fractions.Fraction` endpoints.  Operations return
enclosures of the exact image; ``round_out`` trades exactness for bounded
denominator size by rounding endpoints outward to a dyadic grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

Number = Union[int, Fraction]


def _floor_div(a: Fraction, bits: int) -> Fraction:
    return Fraction(math.floor(a * (1 << bits)), 1 << bits)


def _ceil_div(a: Fraction, bits: int) -> Fraction:
    return Fraction(math.ceil(a * (1 << bits)), 1 << bits)


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, x: Number) -> "RationalInterval":
        return cls(Fraction(x), Fraction(x))

    @staticmethod
    def coerce(x) -> "RationalInterval":
        if isinstance(x, RationalInterval):
            return x
        return RationalInterval.point(Fraction(x))

    # --- queries -------------------------------------------------------
    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        if isinstance(x, RationalInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        x = Fraction(x)
        return self.lo <= x <= self.hi

    __contains__ = contains

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def sign(self) -> int:
        """+1 or -1 when the interval excludes zero, 0 otherwise."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0

    def intersect(self, other: "RationalInterval") -> "RationalInterval":
        return RationalInterval(max(self.lo, other.lo), min(self.hi, other.hi))

    # --- arithmetic ----------------------------------------------------
    def __neg__(self):
        return RationalInterval(-self.hi, -self.lo)

    def __add__(self, other):
        o = RationalInterval.coerce(other)
        return RationalInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __sub__(self, other):
        o = RationalInterval.coerce(other)
        return RationalInterval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other):
        return RationalInterval.coerce(other) - self

    def __mul__(self, other):
        o = RationalInterval.coerce(other)
        if self.lo >= 0 and o.lo >= 0:
            return RationalInterval(self.lo * o.lo, self.hi * o.hi)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RationalInterval(min(ps), max(ps))

    __rmul__ = __mul__

    def reciprocal(self) -> "RationalInterval":
        if self.contains_zero():
            raise ZeroDivisionError("interval contains zero")
        return RationalInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * RationalInterval.coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return RationalInterval.coerce(other) * self.reciprocal()

    def __pow__(self, k: int):
        if k < 0:
            return (self ** (-k)).reciprocal()
        if k == 0:
            return RationalInterval.point(1)
        if k % 2 == 1 or self.lo >= 0:
            a, b = self.lo ** k, self.hi ** k
            return RationalInterval(min(a, b), max(a, b))
        if self.hi <= 0:
            return RationalInterval(self.hi ** k, self.lo ** k)
        return RationalInterval(Fraction(0), max(self.lo ** k, self.hi ** k))

    def round_out(self, bits: int = 160) -> "RationalInterval":
        """Outward rounding of both endpoints to multiples of 2**-bits."""
        return RationalInterval(_floor_div(self.lo, bits), _ceil_div(self.hi, bits))

    def to_float_pair(self) -> tuple[float, float]:
        return float(self.lo), float(self.hi)

    def __repr__(self):
        return f"RationalInterval({float(self.lo)!r}, {float(self.hi)!r})"


def sqrt_interval(x: Number, bits: int = 160) -> RationalInterval:
    """Dyadic enclosure of sqrt(x) for rational x >= 0, width <= 2**-bits."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative argument")
    scale = 1 << (2 * bits)
    n_lo = math.floor(x * scale)
    n_hi = math.ceil(x * scale)
    lo = math.isqrt(n_lo)
    r = math.isqrt(n_hi)
    hi = r if r * r == n_hi else r + 1
    return RationalInterval(Fraction(lo, 1 << bits), Fraction(hi, 1 << bits))


def _arctan_inv(k: int, terms: int) -> RationalInterval:
    """arctan(1/k) from its alternating series; the first omitted term bounds the error."""
    s = Fraction(0)
    for j in range(terms):
        s += Fraction((-1) ** j, (2 * j + 1) * k ** (2 * j + 1))
    tail = Fraction(1, (2 * terms + 1) * k ** (2 * terms + 1))
    return RationalInterval(s - tail, s + tail)


@lru_cache(maxsize=None)
def pi_interval(width_exp: int = 30) -> RationalInterval:
    """Machin enclosure pi = 16 atan(1/5) - 4 atan(1/239), width < 10**-width_exp."""
    target = Fraction(1, 10 ** width_exp)
    terms = 4
    while True:
        iv = 16 * _arctan_inv(5, terms) - 4 * _arctan_inv(239, terms)
        if iv.width < target / 2:
            return iv.round_out(4 * width_exp)
        terms += 4


def exp_interval(x: RationalInterval, terms: int = 8) -> RationalInterval:
    """Enclosure of exp over an interval inside [0, 1): Taylor polynomial plus
    the remainder bound x^(J+1)/(J+1)! * e <= 3 x^(J+1)/(J+1)!."""
    if x.lo < 0 or x.hi >= 1:
        raise ValueError("exp_interval needs 0 <= x < 1")

    def taylor(t: Fraction) -> Fraction:
        s, term = Fraction(1), Fraction(1)
        for j in range(1, terms + 1):
            term = term * t / j
            s += term
        return s

    rem = 3 * x.hi ** (terms + 1) / math.factorial(terms + 1)
    return RationalInterval(taylor(x.lo), taylor(x.hi) + rem)


def exp_upper(x: Fraction) -> Fraction:
    """Rational upper bound for exp(x), valid for 0 <= x < 1."""
    if not 0 <= x < 1:
        raise ValueError("exp_upper needs 0 <= x < 1")
    return 1 / (1 - x)


def exp_lower(x: Fraction) -> Fraction:
    """Rational lower bound for exp(x), valid for x >= 0."""
    if x < 0:
        raise ValueError("exp_lower needs x >= 0")
    return 1 + x
