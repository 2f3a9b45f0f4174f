"""Polynomial arithmetic and factorization over prime fields F_p.

Exact path: squarefree decomposition (Yun, with p-th root handling), then
distinct-degree and Cantor-Zassenhaus equal-degree splitting with a fixed
seed.  Batch path: residue-degree patterns of a fixed squarefree polynomial
for many primes at once, read off from traces of powers of the Frobenius
matrix (the trace of Q^k counts roots in F_{p^k}).
"""

from __future__ import annotations

import random
from typing import Sequence

import numpy as np

Fp = tuple  # coefficients mod p, low degree first, trimmed


def fp_trim(a: Sequence[int], p: int) -> tuple:
    a = [x % p for x in a]
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return tuple(a) if a else (0,)


def fp_deg(a: Sequence[int]) -> int:
    return -1 if len(a) == 1 and a[0] == 0 else len(a) - 1


def fp_add(a, b, p):
    n = max(len(a), len(b))
    return fp_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)], p)


def fp_sub(a, b, p):
    n = max(len(a), len(b))
    return fp_trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)], p)


def fp_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return fp_trim(out, p)


def fp_monic(a, p):
    inv = pow(a[-1], -1, p)
    return fp_trim([x * inv for x in a], p)


def fp_divmod(a, b, p):
    a = list(fp_trim(a, p))
    b = fp_trim(b, p)
    db = fp_deg(b)
    if db < 0:
        raise ZeroDivisionError("division by zero polynomial")
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - db, 1)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] * inv % p
        if c:
            q[k - db] = c
            for i in range(db + 1):
                a[k - db + i] = (a[k - db + i] - c * b[i]) % p
    return fp_trim(q, p), fp_trim(a[:db] if db > 0 else [0], p)


def fp_mod(a, b, p):
    return fp_divmod(a, b, p)[1]


def fp_gcd(a, b, p):
    a, b = fp_trim(a, p), fp_trim(b, p)
    while fp_deg(b) >= 0:
        a, b = b, fp_mod(a, b, p)
    return fp_monic(a, p) if fp_deg(a) >= 0 else a


def fp_deriv(a, p):
    return fp_trim([i * a[i] for i in range(1, len(a))], p) if len(a) > 1 else (0,)


def fp_powmod(base, e: int, mod, p):
    result = (1,)
    base = fp_mod(base, mod, p)
    while e:
        if e & 1:
            result = fp_mod(fp_mul(result, base, p), mod, p)
        base = fp_mod(fp_mul(base, base, p), mod, p)
        e >>= 1
    return result


def _pth_root(a, p):
    # a(x) = b(x^p) with coefficients fixed by Frobenius on F_p
    return fp_trim([a[i] for i in range(0, len(a), p)], p)


def squarefree_decomposition(f, p) -> list[tuple[tuple, int]]:
    """Pairs (g, k) with f = prod g^k, g monic squarefree and pairwise coprime."""
    f = fp_monic(fp_trim(f, p), p)
    out: list[tuple[tuple, int]] = []

    def rec(f, mult):
        if fp_deg(f) <= 0:
            return
        d = fp_deriv(f, p)
        if fp_deg(d) < 0:
            rec(_pth_root(f, p), mult * p)
            return
        c = fp_gcd(f, d, p)
        w = fp_divmod(f, c, p)[0]
        i = 1
        while fp_deg(w) > 0:
            y = fp_gcd(w, c, p)
            z = fp_divmod(w, y, p)[0]
            if fp_deg(z) > 0:
                out.append((z, i * mult))
            i += 1
            w = y
            c = fp_divmod(c, y, p)[0]
        if fp_deg(c) > 0:
            rec(_pth_root(c, p), mult * p)

    rec(f, 1)
    return out


def distinct_degree(f, p) -> list[tuple[tuple, int]]:
    """For squarefree monic f: pairs (product of all irreducible factors of degree d, d)."""
    out = []
    h = (0, 1)
    x = (0, 1)
    d = 0
    f = fp_monic(f, p)
    while fp_deg(f) >= 2 * (d + 1):
        d += 1
        h = fp_powmod(h, p, f, p)
        g = fp_gcd(f, fp_sub(h, x, p), p)
        if fp_deg(g) > 0:
            out.append((g, d))
            f = fp_divmod(f, g, p)[0]
            h = fp_mod(h, f, p)
    if fp_deg(f) > 0:
        out.append((f, fp_deg(f)))
    return out


def equal_degree(f, d: int, p: int, rng: random.Random) -> list[tuple]:
    """Split a product of distinct irreducibles of degree d into its factors."""
    n = fp_deg(f)
    if n == d:
        return [fp_monic(f, p)]
    while True:
        a = fp_trim([rng.randrange(p) for _ in range(n)] + [0], p)
        if fp_deg(a) <= 0:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(d-1)) replaces the power map
            t = a
            acc = a
            for _ in range(d - 1):
                t = fp_mod(fp_mul(t, t, p), f, p)
                acc = fp_add(acc, t, p)
            b = acc
        else:
            b = fp_sub(fp_powmod(a, (p ** d - 1) // 2, f, p), (1,), p)
        g = fp_gcd(f, b, p)
        if 0 < fp_deg(g) < n:
            return (equal_degree(g, d, p, rng)
                    + equal_degree(fp_divmod(f, g, p)[0], d, p, rng))


def factor_mod_p(f: Sequence[int], p: int, seed: int = 0) -> list[tuple[tuple, int]]:
    """Complete factorization of f mod p as sorted (monic irreducible, multiplicity) pairs."""
    rng = random.Random(seed)
    out = []
    for g, mult in squarefree_decomposition(f, p):
        for h, d in distinct_degree(g, p):
            for irr in equal_degree(h, d, p, rng):
                out.append((irr, mult))
    out.sort(key=lambda t: (len(t[0]), t[1], t[0]))
    return out


def degree_pattern(f: Sequence[int], p: int) -> list[int]:
    """Residue degrees of the irreducible factors of a squarefree f mod p."""
    pattern = []
    for h, d in distinct_degree(fp_trim(f, p), p):
        pattern += [d] * (fp_deg(h) // d)
    return sorted(pattern)


# --- batch path -----------------------------------------------------------------


def _batch_mulmod(a: np.ndarray, b: np.ndarray, fl: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Lane-wise product a*b mod (f, p); a, b, fl have shape (N, m).

    Convolution terms are accumulated before reducing: m * p^2 < 2^63."""
    N, m = a.shape
    prod = np.zeros((N, 2 * m - 1), dtype=np.int64)
    for i in range(m):
        prod[:, i:i + m] += a[:, i:i + 1] * b
    prod %= p[:, None]
    for k in range(2 * m - 2, m - 1, -1):
        c = prod[:, k:k + 1]
        prod[:, k - m:k] -= c * fl
        prod[:, k - m:k] %= p[:, None]
    return prod[:, :m].copy()


def batch_root_counts(f: Sequence[int], primes: np.ndarray) -> np.ndarray:
    """Array of shape (N, m) with entry k-1 = number of roots of f in F_{p^k}.

    Preconditions: monic f of degree m >= 2, every p > m, p not dividing
    disc(f), and m * p^2 < 2^63."""
    f = list(f)
    m = len(f) - 1
    p = np.asarray(primes, dtype=np.int64)
    N = len(p)
    fl = np.array([f[:m]] * N, dtype=np.int64) % p[:, None]
    # h = x^p mod f by square-and-multiply with per-lane exponent bits
    res = np.zeros((N, m), dtype=np.int64)
    res[:, 0] = 1
    base = np.zeros((N, m), dtype=np.int64)
    base[:, 1] = 1
    e = p.copy()
    while np.any(e):
        bit = (e & 1).astype(bool)
        if bit.any():
            prod = _batch_mulmod(res, base, fl, p)
            res[bit] = prod[bit]
        e >>= 1
        if np.any(e):
            base = _batch_mulmod(base, base, fl, p)
    # Frobenius matrix rows x^(i p) mod f
    Q = np.zeros((N, m, m), dtype=np.int64)
    row = np.zeros((N, m), dtype=np.int64)
    row[:, 0] = 1
    for i in range(m):
        Q[:, i, :] = row
        if i + 1 < m:
            row = _batch_mulmod(row, res, fl, p)
    # N_k = trace(Q^k) mod p, exact since N_k <= m < p
    counts = np.zeros((N, m), dtype=np.int64)
    Pk = Q.copy()
    for k in range(1, m + 1):
        counts[:, k - 1] = np.trace(Pk, axis1=1, axis2=2) % p
        if k < m:
            nxt = np.zeros_like(Pk)
            for j in range(m):
                nxt += Pk[:, :, j:j + 1] * Q[:, j:j + 1, :]
            Pk = nxt % p[:, None, None]
    return counts


def factor_degree_counts(counts: np.ndarray) -> np.ndarray:
    """Convert root counts N_k into a_d = number of irreducible factors of degree d."""
    N, m = counts.shape
    a = np.zeros((N, m + 1), dtype=np.int64)
    for d in range(1, m + 1):
        s = counts[:, d - 1].copy()
        for e in range(1, d):
            if d % e == 0:
                s -= e * a[:, e]
        if np.any(s % d):
            raise ArithmeticError("inconsistent Frobenius root counts")
        a[:, d] = s // d
    if np.any((a * np.arange(m + 1)).sum(axis=1) != m):
        raise ArithmeticError("inconsistent Frobenius root counts")
    return a


def batch_degree_patterns(f: Sequence[int], primes: np.ndarray) -> list[tuple[int, ...]]:
    """Residue-degree patterns of monic f for each prime (see batch_root_counts)."""
    m = len(f) - 1
    N = len(primes)
    if N == 0:
        return []
    if m == 1:
        return [(1,)] * N
    a = factor_degree_counts(batch_root_counts(f, primes))
    out = []
    for row in a.tolist():
        out.append(tuple(d for d in range(1, m + 1) for _ in range(row[d])))
    return out
