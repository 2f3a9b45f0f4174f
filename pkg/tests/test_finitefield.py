import numpy as np
from hypothesis import given, settings, strategies as st

from covol.finitefield import (batch_degree_patterns, degree_pattern, factor_mod_p, fp_mul, fp_trim)

PRIMES = [2, 3, 5, 7, 11, 13, 101]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=1, max_size=6), st.sampled_from(PRIMES))
def test_factorization_multiplies_back(low, p):
    f = tuple(low) + (1,)
    prod = (1,)
    for g, e in factor_mod_p(f, p):
        for _ in range(e):
            prod = fp_mul(prod, g, p)
    assert fp_trim(prod, p) == fp_trim(f, p)


def test_factorization_is_deterministic():
    f = (1, 1, -3, -1, 1)
    assert factor_mod_p(f, 7) == factor_mod_p(f, 7)
    assert sorted(len(g) - 1 for g, _ in factor_mod_p(f, 7)) == [2, 2]


def test_batch_patterns_agree_with_single_prime_path():
    f = (-1, 3, 3, -4, -1, 1)
    primes = np.array([p for p in range(13, 600) if all(p % q for q in range(2, int(p ** 0.5) + 1))
                       and p != 11], dtype=np.int64)
    batch = batch_degree_patterns(f, primes)
    for p, pat in zip(primes.tolist(), batch):
        assert list(pat) == degree_pattern(f, p)
