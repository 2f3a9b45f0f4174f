"""Analytic lower-bound functions driving the degree and discriminant pruning.

psi, xi and rho are Chinburg-Friedman type bounds with fixed numerical
constants (trusted data, not re-derived).  alpha is the elementary bound
g > d^(3/2) zeta_Q(2m) / (2^(2m+t-1) pi^(2m)) = d^(3/2) |B_2m| / (2^t (2m)!),
evaluated exactly up to one square root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeOutOfRange
from .intervals import RationalInterval, sqrt_interval
from .quadrature import Enclosure, kernel_integral

# constants of the bound functions, stored as printed
PSI_SCALE = 0.477132753
PSI_SLOPE = 0.658829093
PSI_SHIFT = 19.0745
XI_CONST = 1.38629436
XI_SLOPE = 0.58548009
RHO_CONST = 0.693147
RHO_SLOPE = 1.278628
LOG_SHIFT = 11.3098

CONSTANT_NOTES = {
    "psi": "0.477132753 exp(0.658829093 m - 19.0745/q); constants from the Chinburg-Friedman estimate "
           "with s=1.4, y=0.1, p0=31 (trusted data)",
    "xi": "1.38629436 - log q + 0.58548009 m - 11.3098/q; estimate with s=0, y=1 (trusted data)",
    "rho": "0.693147 - log q + 1.278628 m - 11.3098/q; estimate with K=k_B, p0=2 (trusted data)",
}

BERNOULLI = {2: Fraction(1, 6), 4: Fraction(-1, 30), 6: Fraction(1, 42), 8: Fraction(-1, 30),
             10: Fraction(5, 66)}

# printed values of spot checks, used for decimal-slip detection
PRINTED = {
    ("psi", 24, 1): "0.01827",
    ("psi", 10, 2): "0.0250",
    ("psi", 3, 4): "0.29244",
    ("exp_xi", 10, 1): "0.01709",
    ("exp_rho", 6, 1): "0.05",
    ("alpha", 5, 89000, 5): "0.01732200133",
    ("alpha", 4, 4800, 4): "0.171830",
    ("Psi", 13, 13, 1): "0.1",
}


def a_func(x: float) -> float:
    """(3 x^-3 (sin x - x cos x))^2, with the removable singularity at 0 filled."""
    if x < 0:
        raise ValueError("x must be non-negative")
    if x < 0.5:
        u2 = x * x
        g = math.fsum((-1) ** j * 6 * (j + 1) / math.factorial(2 * j + 3) * u2 ** j for j in range(12))
    else:
        g = 3 * (math.sin(x) - x * math.cos(x)) / x ** 3
    return g * g


def _check_mq(m: int, q: int) -> None:
    if m < 1 or q < 1:
        raise ValueError("need m >= 1 and q >= 1")


def psi(m: int, q: int) -> float:
    _check_mq(m, q)
    return PSI_SCALE * math.exp(PSI_SLOPE * m - PSI_SHIFT / q)


def xi(m: int, q: int) -> float:
    """Lower bound for log mu(k,B) in terms of m and q = [k'_B:k]."""
    _check_mq(m, q)
    return XI_CONST - math.log(q) + XI_SLOPE * m - LOG_SHIFT / q


def rho(m: int, q: int) -> float:
    """Lower bound for log mu(k,B) in terms of m and q = [k_B:k]."""
    _check_mq(m, q)
    return RHO_CONST - math.log(q) + RHO_SLOPE * m - LOG_SHIFT / q


def alpha_interval(m: int, d: int, t: int) -> RationalInterval:
    if m not in (2, 3, 4, 5):
        raise DegreeOutOfRange(f"alpha needs m in [2, 5], got {m}")
    if d < 1:
        raise ValueError("d must be positive")
    if not 1 <= t <= m:
        raise ValueError("t must lie in [1, m]")
    c = abs(BERNOULLI[2 * m]) / (2 ** t * math.factorial(2 * m))
    return d * sqrt_interval(d, 160) * c


def alpha(m: int, d: int, t: int) -> float:
    return float(alpha_interval(m, d, t).mid)


def disc_cutoff(m: int, budget) -> int:
    """Least d with alpha(m, d, m) > budget; every field with d_k >= cutoff is excluded."""
    budget = Fraction(budget)
    if budget <= 0:
        raise ValueError("budget must be positive")
    if m not in (2, 3, 4, 5):
        raise DegreeOutOfRange(f"alpha needs m in [2, 5], got {m}")
    c = abs(BERNOULLI[2 * m]) / (2 ** m * math.factorial(2 * m))
    # alpha > budget  <=>  d^3 > (budget / c)^2
    X = (budget / c) ** 2
    d = max(1, int(round(float(X) ** (1 / 3))) - 2)
    while Fraction(d ** 3) <= X:
        d += 1
    while d > 1 and Fraction((d - 1) ** 3) > X:
        d -= 1
    return d


def ep_bound_functions(n: int, m: int, q: int) -> tuple[float, float, float]:
    """(Psi, X, R): 2^n psi and the log-domain shifts n log 2 + xi, n log 2 + rho."""
    if not 1 <= n <= m:
        raise ValueError("need 1 <= n <= m")
    return 2 ** n * psi(m, q), n * math.log(2) + xi(m, q), n * math.log(2) + rho(m, q)


# --- integrals --------------------------------------------------------------------


@dataclass(frozen=True)
class IntegralBound:
    kernel: str
    y: str
    coeff: str
    lower: float
    upper: float
    raw: Enclosure

    def as_dict(self) -> dict:
        return {"kernel": self.kernel, "y": self.y, "coeff": self.coeff,
                "lower": self.lower, "upper": self.upper, "panels": self.raw.panels}


def _scaled(kernel: str, y, coeff, tol, max_panels) -> IntegralBound:
    enc = kernel_integral(kernel, y, tol=tol, max_panels=max_panels)
    c = Fraction(str(coeff))
    lo = Fraction(enc.lo) * c
    hi = Fraction(enc.hi) * c
    return IntegralBound(kernel, str(y), str(coeff), _down(lo), _up(hi), enc)


def cf_integrals(y, coeff_sinh, coeff_cosh, tol: float | None = 1e-13,
                 max_panels: int = 4000) -> tuple[IntegralBound, IntegralBound]:
    """Certified enclosures of coeff * int (1 - a(sqrt(y) x)) K(x) dx for both kernels."""
    if float(y) <= 0:
        raise ValueError("y must be positive")
    return (_scaled("sinh", y, coeff_sinh, tol, max_panels),
            _scaled("cosh", y, coeff_cosh, tol, max_panels))


def _down(x: Fraction) -> float:
    f = float(x)
    return f if Fraction(f) <= x else math.nextafter(f, -math.inf)


def _up(x: Fraction) -> float:
    f = float(x)
    return f if Fraction(f) >= x else math.nextafter(f, math.inf)


# --- printed-value comparison -------------------------------------------------------------


def decimal_slip(computed: float, printed: str) -> int | None:
    """Power of ten k != 0 with printed ~ computed * 10^k on the printed digits, else None."""
    p = float(printed)
    if computed <= 0 or p <= 0:
        return None
    k = round(math.log10(p / computed))
    if k == 0:
        return None
    digits = len(printed.split(".")[-1]) if "." in printed else 0
    tol = 10 ** (-digits) * 1.0001
    if abs(computed * 10 ** k - p) <= tol:
        return k
    return None


def spot_values() -> list[dict]:
    """Computed spot values next to their printed counterparts, with slip annotations."""
    rows = []
    for key, printed in PRINTED.items():
        name = key[0]
        if name == "psi":
            val = psi(key[1], key[2])
        elif name == "exp_xi":
            val = math.exp(xi(key[1], key[2]))
        elif name == "exp_rho":
            val = math.exp(rho(key[1], key[2]))
        elif name == "alpha":
            val = alpha(key[1], key[2], key[3])
        else:
            val = ep_bound_functions(key[1], key[2], key[3])[0]
        slip = decimal_slip(val, printed)
        rows.append({"quantity": f"{name}{key[1:]}", "computed": val, "printed": printed,
                     "annotation": f"suspected-typo (printed = computed x 10^{slip})" if slip else ""})
    return rows
