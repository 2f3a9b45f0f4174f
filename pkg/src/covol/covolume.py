"""Covolume formulas for arithmetic lattices from quaternion algebras.

Borel's formulas give g(k,B), mu(k,B) and the covolume of the normalizer of
a maximal order (the minimal covolume in a commensurability class).
Vigneras' formula is kept verbatim as a cross-check; disagreements are
reported, never patched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import MissingInvariant, ParityError, TPrimeExceedsT
from .invariants import ClassInvariants
from .numfield import FinitePlace, NumberField


@dataclass(frozen=True)
class QuaternionData:
    """Ramification of B/k: number of ramified real places and the finite ramified places."""

    degree: int
    inf_ramified: int
    fin_ramified: tuple[FinitePlace, ...] = ()
    min_split: int = 2

    def __post_init__(self):
        object.__setattr__(self, "fin_ramified", tuple(sorted(self.fin_ramified)))
        if not 0 <= self.inf_ramified <= self.degree:
            raise ValueError(f"inf_ramified must lie in [0, {self.degree}]")
        if (self.inf_ramified + len(self.fin_ramified)) % 2:
            raise ParityError("total number of ramified places must be even")
        if len(set(self.fin_ramified)) != len(self.fin_ramified):
            raise ValueError("repeated finite place")
        if self.n < self.min_split:
            raise ValueError(f"n = {self.n} split real places, need at least {self.min_split}")

    @property
    def n(self) -> int:
        return self.degree - self.inf_ramified

    @property
    def t_prime(self) -> int:
        return sum(1 for v in self.fin_ramified if v.norm == 2)

    @property
    def uniform(self) -> bool:
        return self.inf_ramified + len(self.fin_ramified) > 0

    def label(self) -> str:
        fin = ",".join(f"{v.p}^{v.f}" if v.f > 1 else str(v.p) for v in self.fin_ramified) or "-"
        return f"n={self.n} R_inf={self.inf_ramified} R_f={{{fin}}}"


def g_value(m: int, t: int, kB: int | None, zeta_m1: Fraction | None) -> Fraction:
    """g(k,B) = (-1)^m zeta_k(-1) / (2^(m+t-1) [k_B:k])."""
    if zeta_m1 is None or kB is None:
        raise MissingInvariant("zeta_k(-1) and [k_B:k] are required")
    g = Fraction((-1) ** m) * Fraction(zeta_m1) / (2 ** (m + t - 1) * kB)
    if g <= 0:
        raise ArithmeticError(f"g must be positive, got {g}")
    return g


def mu_value(g: Fraction, t: int, t_prime: int) -> Fraction:
    if not 0 <= t_prime <= t:
        raise TPrimeExceedsT(f"t'={t_prime} exceeds t={t}")
    return g * 2 ** (t - t_prime)


def finite_factor(fin_ramified: Sequence[FinitePlace]) -> Fraction:
    """prod over ramified places with Nv != 2 of (Nv - 1)/2."""
    out = Fraction(1)
    for v in fin_ramified:
        if v.norm != 2:
            out *= Fraction(v.norm - 1, 2)
    return out


def chi_maximal(mu: Fraction, fin_ramified: Sequence[FinitePlace]) -> Fraction:
    return mu * finite_factor(fin_ramified)


def vigneras_chi(m: int, n: int, zeta_m1: Fraction, fin_ramified: Sequence[FinitePlace],
                 gen_index: Fraction = Fraction(1)) -> Fraction:
    """(index) (-1)^(m+n) 2^(n-m-1) zeta_k(-1) prod (Nv - 1), as printed."""
    if gen_index <= 0:
        raise ValueError("generalized index must be positive")
    val = Fraction(gen_index) * (-1) ** (m + n) * Fraction(2) ** (n - m - 1) * Fraction(zeta_m1)
    for v in fin_ramified:
        val *= v.norm - 1
    return val


def ep_measure(chi: Fraction, n: int) -> Fraction:
    if n < 1:
        raise ValueError("n must be at least 1")
    return chi * 2 ** n


def aut_bound(chi: Fraction) -> int:
    """Upper bound 60*chi for the automorphism group order."""
    if chi <= 0:
        raise ValueError("chi must be positive")
    return math.floor(60 * Fraction(chi))


@dataclass
class CovolumeReport:
    field_disc: int
    quaternion: QuaternionData
    t: int
    kB: int
    kB_exact: bool
    zeta_minus1: Fraction
    g: Fraction
    mu: Fraction
    chi_max: Fraction
    chi_norm1: Fraction
    ep_min: Fraction
    vigneras_ratio: Fraction
    flags: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        q = self.quaternion
        return {
            "disc": self.field_disc,
            "n": q.n,
            "inf_ramified": q.inf_ramified,
            "fin_ramified": [{"p": v.p, "e": v.e, "f": v.f, "norm": v.norm, "label": v.label}
                             for v in q.fin_ramified],
            "t": self.t,
            "t_prime": q.t_prime,
            "kB": self.kB,
            "kB_exact": self.kB_exact,
            "zeta_minus_1": str(self.zeta_minus1),
            "g": str(self.g),
            "mu": str(self.mu),
            "chi_max": str(self.chi_max),
            "chi_norm1_vigneras": str(self.chi_norm1),
            "vigneras_ratio": str(self.vigneras_ratio),
            "ep_min": str(self.ep_min),
            "aut_bound": aut_bound(self.chi_max),
            "flags": list(self.flags),
        }


def covolume_report(k: NumberField, qd: QuaternionData, ci: ClassInvariants, zeta_m1: Fraction,
                    kB: int | None = None, kB_exact: bool | None = None) -> CovolumeReport:
    """All covolume quantities for (k, B).  ``kB`` defaults to the R_f-free degree."""
    if ci is None:
        raise MissingInvariant("class invariants required")
    if kB is None:
        kB = ci.kB_deg
        kB_exact = "kprime-upper-bound" not in ci.flags and not qd.fin_ramified
    flags = []
    if not kB_exact:
        flags.append("kB-upper-bound-used")
        flags.append("lower-bound-only")
    g = g_value(k.degree, ci.t, kB, zeta_m1)
    mu = mu_value(g, ci.t, qd.t_prime)
    chi = chi_maximal(mu, qd.fin_ramified)
    vig = vigneras_chi(k.degree, qd.n, zeta_m1, qd.fin_ramified)
    ratio = vig / chi
    expected = None
    if not qd.fin_ramified and ci.h == 1:
        expected = Fraction(2 ** k.degree, ci.u_index)  # [N Gamma+ : Gamma1] = [U+ : U^2]
    if ratio < 0 or (expected is not None and ratio != expected):
        flags.append(f"vigneras-discrepancy: norm-one value {vig} vs {chi} (ratio {ratio})")
    if any(v.norm == 3 for v in qd.fin_ramified):
        flags.append("norm-3 place: factor (Nv-1)/2 = 1, not > 1")
    return CovolumeReport(k.field_disc, qd, ci.t, kB, bool(kB_exact), Fraction(zeta_m1), g, mu, chi,
                          vig, ep_measure(chi, qd.n), ratio, flags)
