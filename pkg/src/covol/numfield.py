"""Totally real number fields given by a monic defining polynomial.

A :class:`NumberField` carries the certified invariants needed downstream:
polynomial and field discriminants, isolating intervals for the real
embeddings, and prime splitting via Kummer-Dedekind (with dataset overrides
at primes dividing the index of Z[theta]).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (IndexObstruction, IndexUnresolved, NotTotallyReal,
                     PrecisionCapExceeded, ZeroElement)
from .finitefield import factor_mod_p, fp_divmod, fp_gcd, fp_deg, fp_mul, fp_trim
from .intervals import RationalInterval
from .polynomial import (Polynomial, count_real_roots, isolate_real_roots,
                         peval, pmul, poly_discriminant, refine_root, resultant,
                         trim)


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization of |n| (inputs here are discriminants)."""
    n = abs(n)
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


@dataclass(frozen=True, order=True)
class FinitePlace:
    """Prime ideal above p with ramification e and residue degree f.

    ``gen`` is the monic factor of the defining polynomial mod p that
    generates the ideal together with p (None for override data)."""

    p: int
    f: int
    e: int
    idx: int = 0
    gen: tuple | None = field(default=None, compare=False)

    @property
    def norm(self) -> int:
        return self.p ** self.f

    @property
    def label(self) -> str:
        return f"{self.p}:{self.idx}"


@dataclass(frozen=True)
class SplittingType:
    p: int
    places: tuple[FinitePlace, ...]
    source: str = "kummer"

    @property
    def factors(self) -> tuple[tuple[int, int], ...]:
        return tuple((v.e, v.f) for v in self.places)

    @property
    def norms(self) -> tuple[int, ...]:
        return tuple(v.norm for v in self.places)

    @property
    def is_inert(self) -> bool:
        return len(self.places) == 1 and self.places[0].e == 1


def dedekind_maximal(coeffs: Sequence[int], p: int) -> bool:
    """Dedekind criterion: True iff Z[theta] is p-maximal."""
    fac = factor_mod_p(coeffs, p)
    g = (1,)
    h = (1,)
    for irr, e in fac:
        g = pmul(g, irr)
        for _ in range(e - 1):
            h = pmul(h, irr)
    F = [x for x in trim([a - b for a, b in _zip_pad(pmul(g, h), coeffs)])]
    if any(x % p for x in F):
        raise ArithmeticError("Dedekind lift does not reduce to f mod p")
    F = fp_trim([x // p for x in F], p)
    if fp_deg(F) < 0:
        return False
    gbar = fp_trim(g, p)
    hbar = fp_trim(h, p)
    common = fp_gcd(fp_gcd(F, gbar, p), hbar, p)
    return fp_deg(common) == 0


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return [((a[i] if i < len(a) else 0), (b[i] if i < len(b) else 0)) for i in range(n)]


@dataclass(frozen=True, eq=False)
class NumberField:
    poly: Polynomial
    poly_disc: int
    field_disc: int
    index: int
    roots: tuple[tuple[Fraction, Fraction], ...]
    overrides: Mapping[int, tuple[tuple[int, int], ...]] = field(default_factory=dict, compare=False)
    _split_cache: dict = field(default_factory=dict, compare=False, repr=False)
    _root_cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def degree(self) -> int:
        return self.poly.degree

    m = degree

    @property
    def coeffs(self) -> tuple:
        return self.poly.coeffs

    @property
    def index_sq(self) -> int:
        return self.index ** 2

    def index_primes(self) -> list[int]:
        return sorted(factorize(self.index)) if self.index > 1 else []

    def __str__(self):
        return f"Q[x]/({self.poly}), d_k={self.field_disc}"

    # element helpers -----------------------------------------------------
    def reduce(self, a: Sequence) -> tuple:
        """Canonical representative of a polynomial in theta (degree < m)."""
        from .polynomial import pdivmod
        a = trim(a)
        if len(a) <= self.degree:
            return tuple(a) + (0,) * (self.degree - len(a))
        r = pdivmod(a, self.coeffs)[1]
        r = tuple(r) + (0,) * (self.degree - len(r))
        return r

    def mul(self, a: Sequence, b: Sequence) -> tuple:
        return self.reduce(pmul(a, b))

    def norm(self, a: Sequence) -> Fraction:
        """Field norm of a(theta): the resultant of f and a for monic f."""
        a = trim(a)
        if a == (0,):
            return Fraction(0)
        return resultant(self.coeffs, a)

    def root_interval(self, i: int, width_bits: int) -> tuple[Fraction, Fraction]:
        key = (i, width_bits)
        hit = self._root_cache.get(key)
        if hit is None:
            lo, hi = self.roots[i]
            lo, hi = refine_root(self.coeffs, lo, hi, Fraction(1, 1 << width_bits))
            hit = (lo, hi)
            self._root_cache[key] = hit
        return hit


def build_field(poly, overrides: Mapping | None = None, known_disc: int | None = None) -> NumberField:
    """Certify a totally real field and its discriminant.

    Squares p^2 dividing the polynomial discriminant are stripped where the
    Dedekind criterion proves p divides the index.  If v_p(disc) >= 4 the
    exponent of p in the index is not determined by that test alone and the
    dataset discriminant ``known_disc`` must settle it consistently."""
    if not isinstance(poly, Polynomial):
        poly = Polynomial.parse(poly)
    c = poly.coeffs
    if count_real_roots(c) != poly.degree:
        raise NotTotallyReal(f"{poly} has non-real roots")
    D = poly_discriminant(poly)
    if D <= 0:
        raise NotTotallyReal("nonpositive discriminant")
    index = 1
    undetermined = []
    for p, v in sorted(factorize(D).items()):
        if v < 2 or dedekind_maximal(c, p):
            continue
        if v <= 3:
            index *= p
        else:
            undetermined.append(p)
    if undetermined:
        if known_disc is None or D % known_disc:
            raise IndexUnresolved(f"index exponent at {undetermined} needs a dataset discriminant")
        sq = D // known_disc
        r = math.isqrt(sq)
        if r * r != sq or r % index:
            raise IndexUnresolved(f"dataset discriminant {known_disc} incompatible with {D}")
        rest = factorize(r // index)
        if any(q not in undetermined for q in rest) or any(q not in rest for q in undetermined):
            raise IndexUnresolved(f"dataset discriminant {known_disc} incompatible with Dedekind data")
        index = r
    d_k = D // (index * index)
    if known_disc is not None and known_disc != d_k:
        from .errors import DatasetContradiction
        raise DatasetContradiction(f"computed d_k={d_k}, dataset says {known_disc}")
    roots = tuple(isolate_real_roots(c))
    ov = {int(p): tuple(tuple(map(int, ef)) for ef in v) for p, v in (overrides or {}).items()}
    return NumberField(poly=poly, poly_disc=D, field_disc=d_k, index=index, roots=roots, overrides=ov)


def split_prime(k: NumberField, p: int) -> SplittingType:
    """Decomposition of p in the ring of integers, ordered by (f, e)."""
    hit = k._split_cache.get(p)
    if hit is not None:
        return hit
    m = k.degree
    if k.index % p == 0:
        if p not in k.overrides:
            raise IndexObstruction(p)
        efs = sorted(k.overrides[p], key=lambda ef: (ef[1], ef[0]))
        places = tuple(FinitePlace(p=p, f=f, e=e, idx=i) for i, (e, f) in enumerate(efs))
        st = SplittingType(p, places, source="override")
    else:
        fac = factor_mod_p(k.coeffs, p)
        fac = sorted(fac, key=lambda t: (len(t[0]) - 1, t[1], t[0]))
        places = tuple(FinitePlace(p=p, f=len(g) - 1, e=e, idx=i, gen=g)
                       for i, (g, e) in enumerate(fac))
        st = SplittingType(p, places)
    if sum(v.e * v.f for v in st.places) != m:
        raise ArithmeticError(f"splitting data at {p} does not sum to the degree")
    if any(v.e > 1 for v in st.places) and k.field_disc % p:
        raise ArithmeticError(f"ramified place above {p} but {p} does not divide d_k")
    k._split_cache.setdefault(p, st)
    return k._split_cache[p]


def count_places_over_2(k: NumberField) -> int:
    return len(split_prime(k, 2).places)


def element_in_place(k: NumberField, a: Sequence[int], v: FinitePlace) -> bool:
    """Kummer membership test a(theta) in v = (p, g(theta)); needs p not dividing the index."""
    if v.gen is None:
        raise IndexObstruction(v.p, "membership test unavailable at an index prime")
    abar = fp_trim(a, v.p)
    if fp_deg(abar) < 0:
        return True
    return fp_deg(fp_divmod(abar, v.gen, v.p)[1]) < 0


def _eval_interval(a: Sequence, x: RationalInterval) -> RationalInterval:
    acc = RationalInterval.point(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def embed(k: NumberField, element: Sequence, precision: Fraction = Fraction(1, 1 << 40),
          max_bits: int = 2000) -> list[RationalInterval]:
    """Intervals of width <= precision around each real embedding of element."""
    a = trim(element)
    precision = Fraction(precision)
    out = []
    for i in range(k.degree):
        bits = 8
        while True:
            lo, hi = k.root_interval(i, bits)
            iv = _eval_interval(a, RationalInterval(lo, hi))
            if iv.width <= precision:
                out.append(iv)
                break
            bits *= 2
            if bits > max_bits:
                raise PrecisionCapExceeded(f"embedding precision cap of {max_bits} bits reached")
    return out


def signs(k: NumberField, element: Sequence, max_bits: int = 2000) -> tuple[int, ...]:
    """Signs of the real embeddings of a nonzero element."""
    a = trim(element)
    if all(x == 0 for x in a):
        raise ZeroElement("sign of the zero element")
    out = []
    for i in range(k.degree):
        bits = 8
        while True:
            lo, hi = k.root_interval(i, bits)
            s = _eval_interval(a, RationalInterval(lo, hi)).sign()
            if s:
                out.append(s)
                break
            bits *= 2
            if bits > max_bits:
                raise PrecisionCapExceeded("sign undecided at the precision cap")
    return tuple(out)
