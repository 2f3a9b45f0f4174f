"""Certified quadrature for the two kernel integrals

    I_sinh(y) = int_0^inf (1 - a(sqrt(y) x)) / sinh(x) dx
    I_cosh(y) = int_0^inf (1 - a(sqrt(y) x)) / cosh(x/2)^2 dx

with a(u) = (3 (sin u - u cos u) / u^3)^2.

Each panel [l, r] is integrated by n-point Gauss-Legendre.  The error is
bounded through a Cauchy estimate of the 2n-th derivative, using an upper
bound M for |f| on the complex rectangle [l-h, r+h] x [-h, h] obtained by
rectangular complex interval arithmetic (mpmath.iv for the real parts).
Since 0 <= a <= 1 on the reals, the tails beyond X0 are bounded by
2 e^-X0 / (1 - e^-2X0) and 4 e^-X0 respectively.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
from mpmath import iv, mp

from .errors import QuadratureBudgetExceeded

_DPS = 40
_ORDER = 12
_SERIES_TERMS = 48

# --- rectangular complex intervals ---------------------------------------------------


def _hull(*xs):
    lo = min(x.a for x in xs)
    hi = max(x.b for x in xs)
    return iv.mpf([lo, hi])


def _sinh_pt(x):
    e = iv.exp(x)
    return (e - 1 / e) / 2


def _cosh_pt(x):
    e = iv.exp(x)
    return (e + 1 / e) / 2


def _sinh(X):
    return _hull(_sinh_pt(X.a), _sinh_pt(X.b))


def _cosh(X):
    c = _hull(_cosh_pt(X.a), _cosh_pt(X.b))
    if X.a <= 0 <= X.b:
        return iv.mpf([1, c.b])
    return c


@dataclass(frozen=True)
class CRect:
    re: object
    im: object

    @staticmethod
    def of(re, im=0) -> "CRect":
        return CRect(iv.mpf(re), iv.mpf(im))

    def __add__(self, o):
        o = _as_rect(o)
        return CRect(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = _as_rect(o)
        return CRect(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return _as_rect(o) - self

    def __mul__(self, o):
        o = _as_rect(o)
        return CRect(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def sq(self) -> "CRect":
        return CRect(self.re ** 2 - self.im ** 2, 2 * self.re * self.im)

    def recip(self) -> "CRect":
        den = self.re ** 2 + self.im ** 2
        if not den.a > 0:
            raise ZeroDivisionError("rectangle may contain zero")
        return CRect(self.re / den, -self.im / den)

    def __truediv__(self, o):
        return self * _as_rect(o).recip()

    def abs_hi(self):
        return iv.sqrt(self.re ** 2 + self.im ** 2).b

    def abs_lo_positive(self) -> bool:
        return (self.re ** 2 + self.im ** 2).a > 0


def _as_rect(x) -> CRect:
    return x if isinstance(x, CRect) else CRect.of(x)


def csin(z: CRect) -> CRect:
    return CRect(iv.sin(z.re) * _cosh(z.im), iv.cos(z.re) * _sinh(z.im))


def ccos(z: CRect) -> CRect:
    return CRect(iv.cos(z.re) * _cosh(z.im), -(iv.sin(z.re) * _sinh(z.im)))


def csinh(z: CRect) -> CRect:
    return CRect(_sinh(z.re) * iv.cos(z.im), _cosh(z.re) * iv.sin(z.im))


def ccosh(z: CRect) -> CRect:
    return CRect(_cosh(z.re) * iv.cos(z.im), _sinh(z.re) * iv.sin(z.im))


def _series(w: CRect, coeffs: list) -> CRect:
    """Horner sum of the exact rational coeffs[j] w^j (omitted terms handled by the caller)."""
    acc = CRect.of(mpmath.mpf(coeffs[-1].numerator) / coeffs[-1].denominator)
    for c in reversed(coeffs[:-1]):
        acc = acc * w + iv.mpf(c.numerator) / c.denominator
    return acc


# --- integrand pieces ---------------------------------------------------------------


@lru_cache(maxsize=None)
def _q_coeffs(J: int):
    # (1 - g(u)) / u^2 and 1 + g(u) in powers of w = u^2, where
    # g(u) = 3 (sin u - u cos u) / u^3 = sum_j (-1)^j 6 (j+1) / (2j+3)! u^(2j)
    from fractions import Fraction
    g = [Fraction((-1) ** j * 6 * (j + 1), math.factorial(2 * j + 3)) for j in range(J + 1)]
    one_minus_over = [-g[j + 1] for j in range(J)]
    one_plus = [Fraction(2)] + g[1:]
    return one_minus_over, one_plus, g


@lru_cache(maxsize=None)
def _shc_coeffs(J: int):
    from fractions import Fraction
    return [Fraction(1, math.factorial(2 * j + 1)) for j in range(J + 1)]


def _tail_disc(R2, J: int, term) -> object:
    """Bound for sum_{j>=J} of term(j) = |c_j| R2^j, assuming ratios term(j+1)/term(j) <= 1/2."""
    t0 = term(J)
    t1 = term(J + 1)
    if t0 == 0:
        return mpmath.mpf(0)
    if t1 / t0 > 0.5:
        raise ZeroDivisionError("series radius too large")
    return 2 * t0


def _widen(z: CRect, rad) -> CRect:
    d = iv.mpf([-rad, rad])
    return CRect(z.re + d, z.im + d)


def _Q_rect(u: CRect) -> CRect:
    """(1 - a(u)) / u^2 over a rectangle."""
    R = u.abs_hi()
    if R <= 5:
        J = _SERIES_TERMS
        om, op, g = _q_coeffs(J)
        w = u.sq()
        R2 = mpmath.mpf(iv.mpf(R).b) ** 2
        A = _series(w, om)
        B = _series(w, op)
        # omitted terms j >= J of both series
        ta = _tail_disc(R2, J, lambda j: abs(mpmath.mpf(6 * (j + 2)) / mpmath.factorial(2 * j + 5)) * R2 ** j)
        tb = _tail_disc(R2, J + 1, lambda j: abs(mpmath.mpf(6 * (j + 1)) / mpmath.factorial(2 * j + 3)) * R2 ** j)
        A = _widen(A, ta)
        B = _widen(B, tb)
        return A * B
    if not u.abs_lo_positive():
        raise ZeroDivisionError("rectangle near the origin")
    u2 = u.sq()
    u3 = u2 * u
    h = (csin(u) - u * ccos(u)) / u3
    a = (3 * h).sq()
    return (1 - a) / u2


def _x_over_sinh(z: CRect) -> CRect:
    R = iv.mpf(z.abs_hi()).b
    if R <= 2:
        J = _SERIES_TERMS
        c = _shc_coeffs(J)
        R2 = mpmath.mpf(R) ** 2
        s = _series(z.sq(), c)
        s = _widen(s, _tail_disc(R2, J + 1, lambda j: R2 ** j / mpmath.factorial(2 * j + 1)))
        return s.recip()
    if not z.re.a > 0:
        raise ZeroDivisionError("rectangle reaches the imaginary axis")
    return z / csinh(z)


def _f_sinh_rect(z: CRect, c) -> CRect:
    return z * _Q_rect(z * c) * _x_over_sinh(z) * (c * c)


def _f_cosh_rect(z: CRect, c) -> CRect:
    ch = ccosh(z * iv.mpf(0.5))
    return z.sq() * _Q_rect(z * c) / ch.sq() * (c * c)


def _a_real(u):
    if abs(u) < mpmath.mpf("0.05"):
        # series for g(u); enough terms for 40 digits at |u| < 0.05
        g = mpmath.fsum((-1) ** j * mpmath.mpf(6 * (j + 1)) / mpmath.factorial(2 * j + 3) * u ** (2 * j)
                        for j in range(16))
        return g * g
    return (3 * (mpmath.sin(u) - u * mpmath.cos(u)) / u ** 3) ** 2


def _f_sinh_real(x, c):
    return (1 - _a_real(c * x)) / mpmath.sinh(x)


def _f_cosh_real(x, c):
    return (1 - _a_real(c * x)) / mpmath.cosh(x / 2) ** 2


KERNELS = {
    "sinh": (_f_sinh_real, _f_sinh_rect, lambda X0: 2 * mpmath.exp(-X0) / (1 - mpmath.exp(-2 * X0))),
    "cosh": (_f_cosh_real, _f_cosh_rect, lambda X0: 4 * mpmath.exp(-X0)),
}


# --- Gauss-Legendre panels ----------------------------------------------------------


@lru_cache(maxsize=None)
def _gauss_nodes(n: int):
    with mp.workdps(_DPS + 10):
        xs, ws = [], []
        for k in range(1, n + 1):
            x = mpmath.cos(mpmath.pi * (k - mpmath.mpf(1) / 4) / (n + mpmath.mpf(1) / 2))
            for _ in range(100):
                p0, p1 = mpmath.mpf(1), x
                for j in range(2, n + 1):
                    p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
                dp = n * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < mpmath.mpf(10) ** (-(_DPS + 5)):
                    break
            xs.append(x)
            ws.append(2 / ((1 - x * x) * dp * dp))
        return tuple(xs), tuple(ws)


def _error_factor(n: int):
    # h^(2n+1) (n!)^4 / ((2n+1) ((2n)!)^3) * (2n)! M / r^(2n), with r = h
    return mpmath.mpf(math.factorial(n) ** 4) / ((2 * n + 1) * mpmath.mpf(math.factorial(2 * n)) ** 2)


@dataclass
class _Panel:
    lo: object
    hi: object
    est: object
    err: object
    enc_lo: object
    enc_hi: object


def _panel(kernel: str, c, c_iv, l, r, n: int = _ORDER) -> _Panel:
    freal, frect, _ = KERNELS[kernel]
    xs, ws = _gauss_nodes(n)
    h = r - l
    mid = (l + r) / 2
    est = h / 2 * mpmath.fsum(w * freal(mid + h / 2 * x, c) for x, w in zip(xs, ws))
    rad = min(h, mpmath.mpf(1))
    try:
        rect = CRect(iv.mpf([l - rad, r + rad]), iv.mpf([-rad, rad]))
        M = mpmath.mpf(iv.mpf(frect(rect, c_iv).abs_hi()).b)
        err = h * (h / rad) ** (2 * n) * _error_factor(n) * M
    except ZeroDivisionError:
        err = mpmath.inf
    err += mpmath.mpf(10) ** (-(_DPS - 8)) * (1 + abs(est))  # floating-point slack
    return _Panel(l, r, est, err, est - err, est + err)


@dataclass(frozen=True)
class Enclosure:
    lo: float
    hi: float
    lo_exact: str
    hi_exact: str
    panels: int
    tail: float

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def as_dict(self) -> dict:
        return {"lower": self.lo, "upper": self.hi, "lower_digits": self.lo_exact,
                "upper_digits": self.hi_exact, "panels": self.panels, "tail_bound": self.tail}


def kernel_integral(kernel: str, y, X0: int = 40, tol: float | None = 1e-13,
                    max_panels: int = 4000) -> Enclosure:
    """Certified enclosure of the kernel integral (without the outer coefficient).

    Refines the worst panel by bisection until the total error is below tol;
    with tol=None exactly max_panels panels are used.  The returned interval
    is the intersection of the enclosures of every refinement step, so it is
    nested in the panel budget."""
    if kernel not in KERNELS:
        raise ValueError(f"unknown kernel {kernel}")
    if float(y) <= 0:
        raise ValueError("y must be positive")
    with mp.workdps(_DPS):
        iv.dps = _DPS
        c = mpmath.sqrt(mpmath.mpf(str(y)))
        c_iv = iv.sqrt(iv.mpf(str(y)))
        X0m = mpmath.mpf(X0)
        tail = KERNELS[kernel][2](X0m)
        panels = [_panel(kernel, c, c_iv, mpmath.mpf(i), mpmath.mpf(i + 1)) for i in range(X0)]
        heap = [(-p.err, i, p) for i, p in enumerate(panels)]
        heapq.heapify(heap)
        counter = len(panels)
        run_lo, run_hi = _running(heap, tail, mpmath.mpf(0), mpmath.inf)
        while True:
            total_err = mpmath.fsum(p.err for _, _, p in heap) + tail
            if tol is not None and total_err < tol:
                break
            if len(heap) >= max_panels:
                if tol is not None:
                    raise QuadratureBudgetExceeded(
                        f"error bound {float(total_err):.3e} above {tol} with {max_panels} panels")
                break
            _, _, worst = heapq.heappop(heap)
            m = (worst.lo + worst.hi) / 2
            for ch in (_panel(kernel, c, c_iv, worst.lo, m), _panel(kernel, c, c_iv, m, worst.hi)):
                heapq.heappush(heap, (-ch.err, counter, ch))
                counter += 1
            run_lo, run_hi = _running(heap, tail, run_lo, run_hi)
        lo, hi = run_lo, run_hi
        return Enclosure(float(mpmath.mpf(lo)) if lo == 0 else _down(lo), _up(hi),
                         mpmath.nstr(lo, 20), mpmath.nstr(hi, 20), len(heap), float(tail))


def _running(heap, tail, lo, hi):
    """Intersect the running enclosure with the current panel sum (integrand >= 0)."""
    new_lo = mpmath.fsum(p.enc_lo for _, _, p in heap)
    new_hi = mpmath.fsum(p.enc_hi for _, _, p in heap) + tail
    return max(lo, new_lo), min(hi, new_hi)


def _down(x) -> float:
    f = float(x)
    return f if f <= x else math.nextafter(f, -math.inf)


def _up(x) -> float:
    f = float(x)
    return f if f >= x else math.nextafter(f, math.inf)
