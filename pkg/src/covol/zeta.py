"""Rigorous Dedekind zeta values of totally real fields.

zeta_k(2) is enclosed by a truncated Euler product (exact local factors for
small primes, certified float sums for the rest) times a tail factor; the
functional equation transfers the enclosure to zeta_k(-1), which is rational
and recovered by a best-rational search with a uniqueness certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import Ambiguous, NoRational, NotFundamental, TailTooWide
from .finitefield import batch_root_counts, factor_degree_counts
from .intervals import RationalInterval, exp_interval, pi_interval, sqrt_interval
from .numfield import NumberField, build_field, factorize, split_prime

Q_MAX = 5000
DEFAULT_P = 10 ** 5
MAX_P = 2 * 10 ** 7
SMALL_PRIME_LIMIT = 1000
_BITS = 192
_CHUNK = 100_000


@lru_cache(maxsize=4)
def _sieve(n: int) -> np.ndarray:
    is_p = np.ones(n + 1, dtype=bool)
    is_p[:2] = False
    for i in range(2, math.isqrt(n) + 1):
        if is_p[i]:
            is_p[i * i::i] = False
    return np.nonzero(is_p)[0]


def primes_up_to(n: int) -> np.ndarray:
    return _sieve(n)


def tail_log_bound(m: int, P: int) -> Fraction:
    """m * sum_{n>P} n^-2 / (1 - P^-2), using sum_{n>P} n^-2 < 1/P."""
    return m * Fraction(1, P) / (1 - Fraction(1, P * P))


def _exact_local(norms: list[int], lo: int, hi: int, scale: int) -> tuple[int, int]:
    for N in norms:
        N2 = N * N
        lo = lo * N2 // (N2 - 1)
        hi = -((-hi * N2) // (N2 - 1))
    return lo, hi


def _large_prime_sum(k: NumberField, primes: np.ndarray) -> tuple[float, float]:
    """(sum of N^-2 over places above the given primes, largest term)."""
    partial = []
    xmax = 0.0
    m = k.degree
    for start in range(0, len(primes), _CHUNK):
        ps = primes[start:start + _CHUNK]
        inv2 = 1.0 / (ps.astype(np.float64) ** 2)
        if m == 1:
            a = np.ones((len(ps), 2))
        else:
            a = factor_degree_counts(batch_root_counts(k.coeffs, ps)).astype(np.float64)
        terms = sum(a[:, f] * inv2 ** f for f in range(1, m + 1))
        partial.append(math.fsum(terms.tolist()))
        xmax = max(xmax, float(inv2.max()))
    return math.fsum(partial), xmax


def zeta2_euler(k: NumberField, P: int) -> RationalInterval:
    """Enclosure of zeta_k(2) from the Euler product over p <= P and the tail bound."""
    if P < 100:
        raise ValueError("prime bound must be at least 100")
    return _zeta2_cached(k, P)


_zeta2_memo: dict = {}
_large_sums: dict = {}  # field key -> {P: (partial sums, xmax)} for primes in (SMALL_PRIME_LIMIT, P]


def _large_sum_upto(k: NumberField, P: int, bad: set[int]) -> tuple[float, float]:
    key = (k.coeffs, k.field_disc)
    store = _large_sums.setdefault(key, {})
    done = [q for q in store if q <= P]
    start = max(done) if done else SMALL_PRIME_LIMIT
    parts, xmax = store[start] if done else ([], 0.0)
    primes = primes_up_to(P)
    seg = primes[(primes > start) & (primes > SMALL_PRIME_LIMIT)]
    if bad:
        seg = seg[~np.isin(seg, np.array(sorted(bad), dtype=np.int64))]
    s, xm = _large_prime_sum(k, seg)
    parts = parts + [s]
    xmax = max(xmax, xm)
    store[P] = (parts, xmax)
    return math.fsum(parts), xmax


def _zeta2_cached(k: NumberField, P: int) -> RationalInterval:
    key = (k.coeffs, k.field_disc, P)
    hit = _zeta2_memo.get(key)
    if hit is not None:
        return hit
    bad = set(factorize(k.poly_disc)) | set(factorize(k.index))
    primes = primes_up_to(max(P, SMALL_PRIME_LIMIT))
    small = [int(p) for p in primes if p <= min(P, SMALL_PRIME_LIMIT) or (int(p) in bad and p <= P)]
    scale = 1 << _BITS
    lo, hi = scale, scale
    for p in small:
        lo, hi = _exact_local(list(split_prime(k, p).norms), lo, hi, scale)
    prod_small = RationalInterval(Fraction(lo, scale), Fraction(hi, scale))
    s, xmax = _large_sum_upto(k, P, bad) if P > SMALL_PRIME_LIMIT else (0.0, 0.0)
    # each float term has relative error < 4e-16 and each of the few partial
    # sums is correctly rounded, so a relative slack of 1e-15 is safe
    slack = Fraction(1, 10 ** 15)
    s_lo = Fraction(s) * (1 - slack)
    s_hi = Fraction(s) * (1 + slack)
    # x <= -log(1-x) <= x (1 + x) for 0 <= x <= 1/2
    log_large = RationalInterval(s_lo, s_hi * (1 + Fraction(xmax) * (1 + slack)))
    tail = tail_log_bound(k.degree, P)
    total_log = RationalInterval(log_large.lo, log_large.hi + tail)
    if total_log.hi >= 1:
        raise TailTooWide(f"log enclosure {float(total_log.hi)} too wide at P={P}")
    result = (prod_small * exp_interval(total_log)).round_out(_BITS)
    _zeta2_memo[key] = result
    return result


def functional_transfer(k: NumberField, zeta2: RationalInterval) -> RationalInterval:
    """zeta_k(-1) = (-1)^m d^(3/2) zeta_k(2) / (2^m pi^(2m))."""
    m = k.degree
    d = k.field_disc
    d32 = d * sqrt_interval(d, _BITS)
    pi2m = pi_interval(30) ** (2 * m)
    val = d32 * zeta2 / (2 ** m * pi2m)
    return (val if m % 2 == 0 else -val).round_out(_BITS)


def zeta2_from_minus1(k: NumberField, z: Fraction) -> RationalInterval:
    """Inverse transfer, used for the round-trip check."""
    m = k.degree
    d = k.field_disc
    d32 = d * sqrt_interval(d, _BITS)
    pi2m = pi_interval(30) ** (2 * m)
    return ((-1) ** m * Fraction(z) * 2 ** m * pi2m / d32).round_out(_BITS)


# --- rational reconstruction --------------------------------------------------------


def simplest_rational(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational of least denominator (then least |numerator|) in [lo, hi]."""
    if lo > hi:
        raise ValueError("empty interval")
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_rational(-hi, -lo)
    fl = math.floor(lo)
    if fl == lo:
        return Fraction(fl)
    if fl + 1 <= hi:
        return Fraction(fl + 1)
    # lo, hi in (fl, fl+1): recurse on the reciprocals of the fractional parts
    return fl + 1 / simplest_rational(1 / (hi - fl), 1 / (lo - fl))


def farey_neighbours(x: Fraction, Q: int) -> tuple[Fraction, Fraction]:
    """Neighbours of x in the Farey sequence of order Q (extended to all reals)."""
    a, b = x.numerator, x.denominator
    if b > Q:
        raise ValueError("denominator exceeds the order")
    if b == 1:
        return Fraction(a * Q - 1, Q), Fraction(a * Q + 1, Q)
    d0 = pow(a, -1, b)  # a*d - b*c = 1
    d = d0 + b * ((Q - d0) // b)
    c = (a * d - 1) // b
    f0 = (-d0) % b  # b*e - a*f = 1
    f = f0 + b * ((Q - f0) // b)
    e = (1 + a * f) // b
    return Fraction(c, d), Fraction(e, f)


def reconstruct_rational(iv: RationalInterval, Q_max: int = Q_MAX) -> tuple[Fraction, Fraction]:
    """The unique rational with denominator <= Q_max inside iv, and its margin.

    The margin is the distance from the interval to the nearest other rational
    with denominator <= Q_max."""
    s = simplest_rational(iv.lo, iv.hi)
    if s.denominator > Q_max:
        raise NoRational(f"no rational with denominator <= {Q_max} in [{float(iv.lo)}, {float(iv.hi)}]")
    left, right = farey_neighbours(s, Q_max)
    inside = [r for r in (left, right) if iv.contains(r)]
    if inside:
        raise Ambiguous([s] + inside)
    return s, min(iv.lo - left, right - iv.hi)


# --- quadratic oracle ------------------------------------------------------------------


def is_fundamental(D: int) -> bool:
    if D % 4 == 1:
        return D != 1 and all(e == 1 for e in factorize(D).values())
    if D % 4 == 0:
        n = D // 4
        return n % 4 in (2, 3) and all(e == 1 for e in factorize(n).values())
    return False


def _sigma1(n: int) -> int:
    s = 1
    for p, e in factorize(n).items():
        s *= (p ** (e + 1) - 1) // (p - 1)
    return s


def quadratic_oracle(D: int) -> Fraction:
    """zeta_k(-1) for k = Q(sqrt D) from the divisor-sum formula."""
    if D <= 1 or not is_fundamental(D):
        raise NotFundamental(f"{D} is not a positive fundamental discriminant")
    total = 0
    b = D % 2
    while b * b < D:
        n = (D - b * b) // 4
        total += _sigma1(n) * (1 if b == 0 else 2)
        b += 2
    return Fraction(total, 60)


def quadratic_field(D: int) -> NumberField:
    if not is_fundamental(D):
        raise NotFundamental(f"{D} is not a fundamental discriminant")
    if D % 4 == 1:
        return build_field((-(D - 1) // 4, -1, 1))
    return build_field((-(D // 4), 0, 1))


# --- driver ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZetaResult:
    field_disc: int
    zeta2: RationalInterval
    zeta_minus1_interval: RationalInterval
    prime_bound: int
    zeta_minus1: Fraction
    reconstruction_margin: Fraction
    attempts: tuple[int, ...]

    def as_dict(self) -> dict:
        return {
            "disc": self.field_disc,
            "zeta2": [str(self.zeta2.lo), str(self.zeta2.hi)],
            "zeta2_approx": [float(self.zeta2.lo), float(self.zeta2.hi)],
            "zeta_minus_1": str(self.zeta_minus1),
            "margin": str(self.reconstruction_margin),
            "margin_approx": float(self.reconstruction_margin),
            "prime_bound": self.prime_bound,
        }


_zeta_memo: dict = {}


def compute_zeta(k: NumberField, P: int = DEFAULT_P, Q_max: int = Q_MAX, max_P: int = MAX_P) -> ZetaResult:
    """zeta_k(2) enclosure and exact zeta_k(-1); P grows by 4x on ambiguity."""
    key = (k.coeffs, k.field_disc, P, Q_max)
    if key in _zeta_memo:
        return _zeta_memo[key]
    attempts = []
    while True:
        attempts.append(P)
        z2 = zeta2_euler(k, P)
        zm1 = functional_transfer(k, z2)
        try:
            val, margin = reconstruct_rational(zm1, Q_max)
            break
        except (Ambiguous, NoRational):
            if P * 4 > max_P:
                raise
            P *= 4
    back = zeta2_from_minus1(k, val)
    if back.hi < z2.lo or back.lo > z2.hi:
        raise ArithmeticError("round trip left the zeta(2) enclosure")
    res = ZetaResult(k.field_disc, z2, zm1, P, val, margin, tuple(attempts))
    _zeta_memo[key] = res
    return res
