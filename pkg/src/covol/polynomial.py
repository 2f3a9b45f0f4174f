"""Dense univariate integer polynomials: parsing, arithmetic, resultants,
Sturm sequences, real-root isolation and irreducibility certification.

Coefficient sequences are stored constant term first.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import NotIrreducible, NotMonic, NotSquarefree, PrecisionCapExceeded

Coeffs = tuple  # tuple of int or Fraction, low degree first


def trim(c: Sequence) -> tuple:
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c) if c else (0,)


def degree(c: Sequence) -> int:
    c = trim(c)
    return -1 if c == (0,) else len(c) - 1


def padd(a: Sequence, b: Sequence) -> tuple:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def pneg(a: Sequence) -> tuple:
    return tuple(-x for x in a)


def psub(a: Sequence, b: Sequence) -> tuple:
    return padd(a, pneg(b))


def pmul(a: Sequence, b: Sequence) -> tuple:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def pscale(a: Sequence, s) -> tuple:
    return trim([x * s for x in a])


def pderiv(a: Sequence) -> tuple:
    return trim([i * a[i] for i in range(1, len(a))]) if len(a) > 1 else (0,)


def peval(a: Sequence, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def pdivmod(a: Sequence, b: Sequence) -> tuple[tuple, tuple]:
    """Division over the rationals (exact integers when b is monic)."""
    a, b = list(trim(a)), trim(b)
    db = degree(b)
    if db < 0:
        raise ZeroDivisionError("polynomial division by zero")
    lb = b[-1]
    monic = lb == 1
    q = [0] * max(len(a) - db, 1)
    while degree(a) >= db:
        da = degree(a)
        coef = a[da] if monic else Fraction(a[da]) / lb
        q[da - db] = coef
        for i in range(db + 1):
            a[da - db + i] -= coef * b[i]
        a = list(trim(a))
    return trim(q), trim(a)


def prem(a: Sequence, b: Sequence) -> tuple:
    return pdivmod(a, b)[1]


def pgcd(a: Sequence, b: Sequence) -> tuple:
    """Monic gcd over the rationals."""
    a, b = trim(a), trim(b)
    while degree(b) >= 0:
        a, b = b, prem(a, b)
    if degree(a) < 0:
        return (0,)
    lead = Fraction(a[-1])
    return tuple(Fraction(x) / lead for x in a)


def resultant(a: Sequence, b: Sequence) -> Fraction:
    """Resultant by the Euclidean recurrence over the rationals."""
    a, b = trim(a), trim(b)
    da, db = degree(a), degree(b)
    if da < 0 or db < 0:
        return Fraction(0)
    if db == 0:
        return Fraction(b[0]) ** da
    if da < db:
        s = -1 if (da * db) % 2 else 1
        return s * resultant(b, a)
    r = prem(a, b)
    dr = degree(r)
    if dr < 0:
        return Fraction(0)
    s = -1 if (da * db) % 2 else 1
    return s * Fraction(b[-1]) ** (da - dr) * resultant(b, r)


def discriminant(c: Sequence) -> int:
    """Discriminant of a monic integer polynomial."""
    c = trim(c)
    n = degree(c)
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    if n == 1:
        return 1
    res = resultant(c, pderiv(c)) / Fraction(c[-1])
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    val = sign * res
    if val.denominator != 1:
        raise ArithmeticError("non-integral discriminant")
    return int(val)


# --- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([a-zA-Z]\w*)|(\*\*|[-+*^()]))")


class _Parser:
    def __init__(self, text: str):
        self.toks = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
            num, name, op = m.groups()
            if num:
                self.toks.append(("num", int(num)))
            elif name:
                self.toks.append(("var", name))
            else:
                self.toks.append(("op", "^" if op == "**" else op))
            pos = m.end()
        self.i = 0
        self.var = None

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> tuple:
        p = self.expr()
        if self.i != len(self.toks):
            raise ValueError(f"trailing input at token {self.i}")
        return p

    def expr(self):
        kind, val = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = pscale(self.term(), sign)
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = padd(acc, t) if val == "+" else psub(acc, t)
            else:
                return acc

    def term(self):
        acc = self.power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = pmul(acc, self.power())
            elif kind in ("num", "var") or (kind == "op" and val == "("):
                acc = pmul(acc, self.power())  # implicit product such as 3x
            else:
                return acc

    def power(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, e = self.take()
            if kind != "num":
                raise ValueError("exponent must be a nonnegative integer")
            out = (1,)
            for _ in range(e):
                out = pmul(out, base)
            return out
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return (val,)
        if kind == "var":
            if self.var is None:
                self.var = val
            elif val != self.var:
                raise ValueError("only one variable is allowed")
            return (0, 1)
        if kind == "op" and val == "(":
            p = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("missing ')'")
            return p
        if kind == "op" and val == "-":
            return pneg(self.atom())
        raise ValueError(f"unexpected token {val!r}")


def parse_coeffs(text) -> tuple:
    """Accept 'x^2-x-1', '[-1,-1,1]', or a sequence of ints (constant first)."""
    if isinstance(text, str):
        s = text.strip()
        if s.startswith("["):
            return trim(int(x) for x in s.strip("[]").split(",") if x.strip())
        return _Parser(s).parse()
    return trim(int(x) for x in text)


def format_poly(c: Sequence, var: str = "x") -> str:
    parts = []
    for i in range(len(c) - 1, -1, -1):
        a = c[i]
        if a == 0:
            continue
        sign = "-" if a < 0 else "+"
        a = abs(a)
        if i == 0:
            body = str(a)
        else:
            mon = var if i == 1 else f"{var}^{i}"
            body = mon if a == 1 else f"{a}*{mon}"
        parts.append((sign, body))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


# --- Sturm sequences and root isolation ---------------------------------------


def sturm_sequence(c: Sequence) -> list[tuple]:
    seq = [trim(c), pderiv(c)]
    while degree(seq[-1]) > 0:
        r = prem(seq[-2], seq[-1])
        if degree(r) < 0:
            break
        seq.append(pneg(r))
    return seq


def _sign_changes(vals) -> int:
    signs = [v > 0 for v in vals if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations_at(seq, x) -> int:
    return _sign_changes(peval(p, x) for p in seq)


def _variations_at_inf(seq, positive: bool) -> int:
    vals = []
    for p in seq:
        d = degree(p)
        lead = p[d]
        vals.append(lead if positive or d % 2 == 0 else -lead)
    return _sign_changes(vals)


def is_squarefree(c: Sequence) -> bool:
    return degree(pgcd(c, pderiv(c))) == 0


def count_real_roots(c: Sequence) -> int:
    if not is_squarefree(c):
        raise NotSquarefree("polynomial has a repeated factor")
    seq = sturm_sequence(c)
    return _variations_at_inf(seq, False) - _variations_at_inf(seq, True)


def cauchy_bound(c: Sequence) -> int:
    """Every root has absolute value < 1 + max|c_i/c_m|; returned as an integer power of 2."""
    lead = abs(Fraction(c[-1]))
    b = 1 + max(abs(Fraction(x)) / lead for x in c[:-1])
    return 1 << max(0, math.ceil(b).bit_length())


def isolate_real_roots(c: Sequence) -> list[tuple[Fraction, Fraction]]:
    """Disjoint dyadic intervals (lo, hi], one per real root, sorted ascending."""
    c = trim(c)
    if not is_squarefree(c):
        raise NotSquarefree("polynomial has a repeated factor")
    seq = sturm_sequence(c)
    B = Fraction(cauchy_bound(c))
    out = []
    stack = [(-B, B, _variations_at(seq, -B), _variations_at(seq, B))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        vm = _variations_at(seq, mid)
        stack.append((lo, mid, vlo, vm))
        stack.append((mid, hi, vm, vhi))
    out.sort()
    return out


def refine_root(c: Sequence, lo: Fraction, hi: Fraction, width: Fraction,
                max_steps: int = 4000) -> tuple[Fraction, Fraction]:
    """Bisect an isolating interval (lo, hi] of a simple root until hi - lo <= width."""
    flo = peval(c, lo)
    if flo == 0:
        # root sits at lo itself is excluded by the half-open convention; nudge
        raise ValueError("lower endpoint is a root")
    steps = 0
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = peval(c, mid)
        if fm == 0:
            return mid, mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
        steps += 1
        if steps > max_steps:
            raise PrecisionCapExceeded(f"root refinement exceeded {max_steps} bisections")
    return lo, hi


# --- irreducibility ------------------------------------------------------------


def _divisors(n: int) -> list[int]:
    n = abs(n)
    ds = set()
    for i in range(1, math.isqrt(n) + 1):
        if n % i == 0:
            ds.add(i)
            ds.add(n // i)
    return sorted(ds)


def _divides_monic(f: Sequence, g: Sequence) -> bool:
    _, r = pdivmod(f, g)
    return degree(r) < 0


def find_factor(c: Sequence) -> tuple | None:
    """A monic integer factor of degree 1..m//2, or None if none exists.

    Candidates g = x^k + ... + b_0 satisfy b_0 | c_0 and the Mignotte bound
    |b_j| <= binom(k, j) * ||f||_2, so the search is exhaustive.
    """
    c = trim(c)
    if c[-1] != 1:
        raise NotMonic("leading coefficient must be 1")
    m = degree(c)
    if m <= 1:
        return None
    if c[0] == 0:
        return (0, 1)
    for r in _divisors(c[0]):
        for root in (r, -r):
            if peval(c, root) == 0:
                return (-root, 1)
    norm = math.isqrt(sum(x * x for x in c)) + 1
    for k in range(2, m // 2 + 1):
        b0s = [s * d for d in _divisors(c[0]) for s in (1, -1)]
        ranges = [range(-math.comb(k, j) * norm, math.comb(k, j) * norm + 1) for j in range(1, k)]
        for b0 in b0s:
            for mid in product(*ranges):
                g = (b0,) + tuple(mid) + (1,)
                if _divides_monic(c, g):
                    return g
    return None


@dataclass(frozen=True)
class Polynomial:
    """Monic irreducible integer polynomial (constant term first)."""

    coeffs: tuple

    def __post_init__(self):
        c = parse_coeffs(self.coeffs) if not isinstance(self.coeffs, tuple) else trim(self.coeffs)
        c = tuple(int(x) for x in c)
        if degree(c) < 1:
            raise ValueError("degree must be at least 1")
        if c[-1] != 1:
            raise NotMonic(f"leading coefficient {c[-1]} != 1")
        fac = find_factor(c)
        if fac is not None:
            raise NotIrreducible(f"{format_poly(c)} has the factor {format_poly(fac)}")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def parse(cls, text) -> "Polynomial":
        return cls(parse_coeffs(text))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __str__(self):
        return format_poly(self.coeffs)


def poly_discriminant(poly) -> int:
    c = poly.coeffs if isinstance(poly, Polynomial) else trim(poly)
    if c[-1] != 1:
        raise NotMonic("leading coefficient must be 1")
    return discriminant(c)


def is_totally_real(poly) -> bool:
    c = poly.coeffs if isinstance(poly, Polynomial) else trim(poly)
    return count_real_roots(c) == degree(c)
