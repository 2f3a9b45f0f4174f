from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from covol.errors import NotIrreducible, NotMonic, NotSquarefree
from covol.polynomial import (Polynomial, count_real_roots, discriminant, find_factor, format_poly, is_totally_real,
                              parse_coeffs, pmul, poly_discriminant)


def det(M):
    n = len(M)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = Fraction(1)
        for i in range(n):
            prod *= M[i][perm[i]]
        total += (-1) ** inv * prod
    return total


def sylvester_disc(c):
    """Discriminant via the Sylvester matrix of f and f' (monic f)."""
    n = len(c) - 1
    f = list(reversed(c))
    df = [(n - i) * f[i] for i in range(n)]
    size = 2 * n - 1
    rows = []
    for i in range(n - 1):
        rows.append([0] * i + f + [0] * (size - n - 1 - i))
    for i in range(n):
        rows.append([0] * i + df + [0] * (size - n - i))
    res = det(rows)
    return int((-1) ** (n * (n - 1) // 2) * res)


@pytest.mark.parametrize("text, disc", [
    ("x^2-x-1", 5),
    ("x^4-x^3-3x^2+x+1", 725),
    ("x^5-x^4-4x^3+3x^2+3x-1", 14641),
    ("x^3-x^2-2x+1", 49),
])
def test_discriminant_examples(text, disc):
    assert poly_discriminant(Polynomial.parse(text)) == disc


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=4))
def test_discriminant_matches_sylvester_oracle(low):
    c = tuple(low) + (1,)
    assert discriminant(c) == sylvester_disc(c)


def test_totally_real_examples():
    assert is_totally_real(Polynomial.parse("x^2-x-1"))
    assert is_totally_real(Polynomial.parse("x^3-3x-1"))
    assert not is_totally_real(Polynomial.parse("x^3-2"))
    with pytest.raises(NotSquarefree):
        is_totally_real((1, -2, 1))


def test_parser_forms_agree():
    assert parse_coeffs("x^4-x^3-3x^2+x+1") == parse_coeffs("[1,1,-3,-1,1]") == (1, 1, -3, -1, 1)
    assert format_poly((1, 1, -3, -1, 1)) == "x^4 - x^3 - 3*x^2 + x + 1"
    assert parse_coeffs(format_poly((1, 1, -3, -1, 1))) == (1, 1, -3, -1, 1)


def test_construction_errors():
    with pytest.raises(NotMonic):
        Polynomial((1, 0, 2))
    with pytest.raises(NotIrreducible):
        Polynomial(pmul((-1, 0, 1), (1, 1, 1)))


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=2), st.lists(st.integers(-5, 5), min_size=1, max_size=2))
def test_products_are_detected_reducible(a, b):
    f = pmul(tuple(a) + (1,), tuple(b) + (1,))
    assert find_factor(f) is not None


def test_sturm_count():
    assert count_real_roots((1, 1, -3, -1, 1)) == 4
    assert count_real_roots((-2, 0, 0, 1)) == 1
