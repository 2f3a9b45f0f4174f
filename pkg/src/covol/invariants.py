"""Unit signatures, class-number verification and the degrees [k'_B:k], [k_B:k].

With class number one the narrow class group is (Z/2)^m modulo the sign
vectors of units, so all 2-extension degrees reduce to GF(2) ranks of sign
rows.  Fundamental units come from the dataset and are verified to be units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .dataset import DatasetRecord
from .errors import (DatasetContradiction, MissingClassData, NonIntegralDegree,
                     UnverifiedUnits)
from .intervals import sqrt_interval
from .numfield import (FinitePlace, NumberField, count_places_over_2,
                       element_in_place, split_prime, signs)
from .polynomial import trim

# --- linear algebra over GF(2) and Q --------------------------------------------


def gf2_rank(rows: Iterable[Sequence[int]]) -> int:
    """Rank of 0/1 row vectors over GF(2)."""
    basis: list[int] = []
    for row in rows:
        v = 0
        for bit in row:
            v = (v << 1) | (bit & 1)
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)


def sign_bits(sgn: Sequence[int]) -> tuple[int, ...]:
    return tuple(1 if s < 0 else 0 for s in sgn)


def mult_matrix(k: NumberField, a: Sequence) -> list[list[Fraction]]:
    """Matrix of multiplication by a(theta) on the power basis (column j = a*theta^j)."""
    m = k.degree
    cols = []
    for j in range(m):
        cols.append(k.mul(a, (0,) * j + (1,)))
    return [[Fraction(cols[j][i]) for j in range(m)] for i in range(m)]


def charpoly(M: list[list[Fraction]]) -> list[Fraction]:
    """Characteristic polynomial det(xI - M), constant term first (Faddeev-LeVerrier)."""
    n = len(M)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk = M @ (Mk_prev + c_{n-k+1} I)
        prev = [row[:] for row in Mk]
        for i in range(n):
            prev[i][i] += coeffs[n - k + 1]
        Mk = [[sum(M[i][l] * prev[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(Mk[i][i] for i in range(n)) / k
    return coeffs


def is_algebraic_integer(k: NumberField, a: Sequence) -> bool:
    return all(c.denominator == 1 for c in charpoly(mult_matrix(k, a)))


# --- units ------------------------------------------------------------------------


@dataclass(frozen=True)
class UnitSystem:
    field: NumberField
    generators: tuple[tuple[Fraction, ...], ...]
    sign_matrix: tuple[tuple[int, ...], ...]  # first row is -1
    verified: bool


def unit_system(k: NumberField, units: Sequence[Sequence]) -> UnitSystem:
    """Verify candidate units and record their sign rows (prefixed by the row of -1)."""
    gens = tuple(tuple(Fraction(c) for c in u) for u in units)
    verified = len(gens) == k.degree - 1
    for u in gens:
        if abs(k.norm(u)) != 1 or not is_algebraic_integer(k, u):
            verified = False
    rows = [tuple([-1] * k.degree)] + [signs(k, u) for u in gens]
    return UnitSystem(k, gens, tuple(rows), verified)


def unit_index(units: UnitSystem) -> tuple[int, bool]:
    """([U:U+], U+ == U^2) from the GF(2) rank of the sign matrix."""
    if not units.verified:
        raise UnverifiedUnits("unit generators failed verification")
    r = gf2_rank(sign_bits(s) for s in units.sign_matrix)
    return 2 ** r, r == units.field.degree


def totally_positive_classes(units: UnitSystem) -> int:
    """[U+:U^2] by enumerating U/U^2 and counting totally positive classes."""
    rows = [sign_bits(s) for s in units.sign_matrix]
    m = units.field.degree
    count = 0
    for exps in product((0, 1), repeat=len(rows)):
        acc = [0] * m
        for e, row in zip(exps, rows):
            if e:
                acc = [a ^ b for a, b in zip(acc, row)]
        if not any(acc):
            count += 1
    return count


# --- class numbers ------------------------------------------------------------------


def minkowski_bound(k: NumberField) -> Fraction:
    """Rational upper bound for (m!/m^m) sqrt(d_k)."""
    m = k.degree
    return Fraction(math.factorial(m), m ** m) * sqrt_interval(k.field_disc, 64).hi


def _coefficient_grid(m: int, H: int) -> np.ndarray:
    rng = np.arange(-H, H + 1)
    grid = np.stack(np.meshgrid(*([rng] * m), indexing="ij"), axis=-1).reshape(-1, m)
    order = np.argsort(np.abs(grid).sum(axis=1), kind="stable")
    return grid[order]


def _float_roots(k: NumberField) -> np.ndarray:
    return np.array([float((lo + hi) / 2) for lo, hi in (k.root_interval(i, 60) for i in range(k.degree))])


def find_elements_of_norm(k: NumberField, targets: set[int], H: int = 3) -> dict[int, list[tuple[int, ...]]]:
    """Elements of Z[theta] with small coefficients whose |norm| lies in targets."""
    m = k.degree
    grid = _coefficient_grid(m, H)
    V = np.vander(_float_roots(k), m, increasing=True)  # V[j, i] = theta_j^i
    norms = np.abs(np.prod(grid @ V.T, axis=1))
    out: dict[int, list[tuple[int, ...]]] = {t: [] for t in targets}
    for t in targets:
        idx = np.nonzero(np.abs(norms - t) < 1e-6 * max(t, 1) + 1e-6)[0]
        for i in idx:
            a = tuple(int(x) for x in grid[i])
            if abs(k.norm(a)) == t:
                out[t].append(a)
    return out


def principal_generator(k: NumberField, v: FinitePlace, H: int = 3) -> tuple[int, ...] | None:
    """An element of Z[theta] generating v, or None if the bounded search fails.

    Requires v to come from Kummer-Dedekind data (p not dividing the index)."""
    if v.gen is None:
        return None
    cands = find_elements_of_norm(k, {v.norm}, H)[v.norm]
    for a in cands:
        if element_in_place(k, a, v):
            return a
    return None


def _index_prime_principal(k: NumberField, p: int, H: int) -> bool:
    """Principality of all places above an index prime, when forced by norms.

    If p has one place, any element of that norm generates it.  If p = v1 v2
    with equal (e, f) = (1, f), an element of norm p^f generates one of them
    and p divided by it generates the other."""
    st = split_prime(k, p)
    shapes = {(v.e, v.f) for v in st.places}
    if len(st.places) == 1 or (len(st.places) == 2 and shapes == {(1, st.places[0].f)}):
        t = st.places[0].norm
        return bool(find_elements_of_norm(k, {t}, H)[t])
    return False


def verify_class_number(k: NumberField, table_h: int, H: int = 3) -> tuple[int, str]:
    """(h, provenance) with provenance 'proven' or 'table'."""
    if table_h < 1:
        raise ValueError("class number must be positive")
    bound = minkowski_bound(k)
    if bound < 2:
        if table_h != 1:
            raise DatasetContradiction(f"d_k={k.field_disc}: Minkowski bound < 2 forces h=1, table says {table_h}")
        return 1, "proven"
    B = math.floor(bound)
    all_principal = True
    for p in range(2, B + 1):
        if any(p % q == 0 for q in range(2, math.isqrt(p) + 1)):
            continue
        if k.index % p == 0:
            small = [v for v in split_prime(k, p).places if v.norm <= B]
            if small and not _index_prime_principal(k, p, H):
                all_principal = False
            continue
        for v in split_prime(k, p).places:
            if v.norm <= B and principal_generator(k, v, H) is None:
                all_principal = False
    if all_principal:
        if table_h != 1:
            raise DatasetContradiction(f"d_k={k.field_disc}: all small primes principal, table says h={table_h}")
        return 1, "proven"
    return table_h, "table"


# --- extension degrees ----------------------------------------------------------------


@dataclass
class ClassInvariants:
    h: int
    h_provenance: str
    cl_2rank: int | None
    u_index: int
    u_plus_sq: bool
    t: int
    m: int
    kprime_deg: int = 1
    kB_deg: int = 1
    flags: list[str] = field(default_factory=list)
    units: UnitSystem | None = field(default=None, repr=False)


def degree_kprime(ci: ClassInvariants, ramified_finite: Iterable[FinitePlace] = ()) -> tuple[int, bool]:
    """([k'_B:k], exact?).  Exact when the 2-part of the class group is trivial."""
    if ci.h == 1:
        return 1, True
    if ci.cl_2rank is None:
        raise MissingClassData("class 2-rank unavailable")
    if ci.cl_2rank == 0:
        return 1, True
    return 2 ** ci.cl_2rank, False


def degree_kB(ci: ClassInvariants) -> int:
    num = 2 ** ci.m * ci.kprime_deg
    if num % ci.u_index:
        raise NonIntegralDegree(f"2^m [k'_B:k] / [U:U+] = {num}/{ci.u_index}")
    return num // ci.u_index


def class_invariants(k: NumberField, rec: DatasetRecord, prove_h: bool = True) -> ClassInvariants:
    us = unit_system(k, rec.fund_units)
    u_index, u_plus_sq = unit_index(us)
    if u_index * totally_positive_classes(us) != 2 ** k.degree:
        raise ArithmeticError("sign-matrix rank and cokernel disagree")
    if prove_h:
        h, prov = verify_class_number(k, rec.class_number)
    else:
        h, prov = rec.class_number, "table"
    ci = ClassInvariants(h=h, h_provenance=prov, cl_2rank=rec.class_2rank, u_index=u_index,
                         u_plus_sq=u_plus_sq, t=count_places_over_2(k), m=k.degree, units=us)
    ci.kprime_deg, exact = degree_kprime(ci)
    if not exact:
        ci.flags.append("kprime-upper-bound")
    ci.kB_deg = degree_kB(ci)
    ci.flags.append("units-from-dataset")
    return ci


def narrow_kB(ci: ClassInvariants, k: NumberField, ramified_finite: Sequence[FinitePlace],
              H: int = 3) -> tuple[int, bool]:
    """[k_B:k] with the classes of the ramified finite places taken into account.

    For h = 1 the narrow class of a prime ideal (pi) is the sign vector of pi
    modulo unit signs, and [k_B:k] = 2^(m - rank).  Returns (degree, exact);
    when a generator is not found the R_f-free value is returned (an upper
    bound) with exact=False."""
    if ci.h != 1 or ci.units is None:
        return ci.kB_deg, "kprime-upper-bound" not in ci.flags and not ramified_finite
    rows = [sign_bits(s) for s in ci.units.sign_matrix]
    for v in ramified_finite:
        g = principal_generator(k, v, H)
        if g is None:
            return ci.kB_deg, False
        rows.append(sign_bits(signs(k, g)))
    return 2 ** (k.degree - gf2_rank(rows)), True
