import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from covol import bounds
from covol.bounds import (a_func, alpha, alpha_interval, cf_integrals, decimal_slip, disc_cutoff,
                          ep_bound_functions, psi, rho, spot_values, xi)
from covol.errors import DegreeOutOfRange
from covol.quadrature import kernel_integral

from oracle_values import INTEGRALS


def test_a_func_examples():
    assert a_func(0.0) == pytest.approx(1.0, abs=1e-15)
    assert a_func(1e-8) == pytest.approx(1.0, abs=1e-12)
    assert a_func(math.pi) == pytest.approx(9 / math.pi ** 4, rel=1e-12)
    # the series branch and the closed form agree at the switch point
    x = 0.5
    closed = (3 * (math.sin(x) - x * math.cos(x)) / x ** 3) ** 2
    assert a_func(x - 1e-12) == pytest.approx(closed, rel=1e-10)


@given(st.floats(min_value=0, max_value=200, allow_nan=False))
def test_a_func_nonnegative_and_bounded(x):
    assert 0 <= a_func(x) <= 1 + 1e-12


def test_spot_values():
    assert psi(24, 1) == pytest.approx(0.01827, abs=5e-5)
    assert psi(10, 2) == pytest.approx(0.0250, abs=1e-4)
    assert math.exp(xi(10, 1)) == pytest.approx(0.0171, abs=2e-4)
    assert math.exp(rho(6, 1)) == pytest.approx(0.0526, abs=1e-3)
    assert psi(3, 4) == pytest.approx(0.02924, abs=1e-5)
    assert alpha(5, 89000, 5) == pytest.approx(0.0173220, abs=1e-7)
    assert alpha(4, 4800, 4) == pytest.approx(0.01718, abs=1e-5)
    assert alpha(2, 13, 2) < 1 / 60 < alpha(2, 14, 2)


def test_alpha_is_certified():
    iv = alpha_interval(5, 89000, 5)
    assert iv.width < Fraction(1, 10 ** 30)
    with pytest.raises(DegreeOutOfRange):
        alpha(6, 100, 1)


def test_cutoffs():
    assert disc_cutoff(2, Fraction(1, 60)) == 14
    assert disc_cutoff(3, Fraction(1, 60)) == 254
    assert disc_cutoff(4, Fraction(1, 60)) == 4704
    c5 = disc_cutoff(5, Fraction(1, 60))
    assert c5 == 86741 and c5 <= 89000
    for m in (2, 3, 4, 5):
        c = disc_cutoff(m, Fraction(1, 60))
        assert alpha_interval(m, c, m).lo > Fraction(1, 60) >= alpha_interval(m, c - 1, m).hi


def test_ep_functions():
    Psi, X, R = ep_bound_functions(13, 13, 1)
    assert 0.10 < Psi < 0.11
    assert ep_bound_functions(2, 2, 1)[0] == pytest.approx(4 * psi(2, 1))
    assert math.exp(ep_bound_functions(2, 2, 2)[1]) > 1 / 15
    with pytest.raises(ValueError):
        ep_bound_functions(3, 2, 1)


def test_psi_monotone_grid():
    for q in (1, 2, 4):
        vals = [psi(m, q) for m in range(2, 25)]
        assert all(a < b for a, b in zip(vals, vals[1:]))
    for m in range(2, 25):
        assert psi(m, 1) < psi(m, 2) < psi(m, 4)


@given(st.integers(2, 5), st.integers(1, 10 ** 6), st.integers(1, 5))
def test_alpha_monotone(m, d, t):
    t = min(t, m)
    assert alpha_interval(m, d, t).lo >= alpha_interval(m, d, m).lo
    assert alpha_interval(m, d + 1, m).lo > alpha_interval(m, d, m).hi


def test_decimal_slips():
    assert decimal_slip(psi(3, 4), "0.29244") == 1
    assert decimal_slip(alpha(4, 4800, 4), "0.171830") == 1
    assert decimal_slip(psi(24, 1), "0.01827") is None
    rows = {r["quantity"]: r for r in spot_values()}
    flagged = sorted(q for q, r in rows.items() if r["annotation"])
    assert flagged == ["alpha(4, 4800, 4)", "psi(3, 4)"]


@pytest.mark.parametrize("key", sorted(INTEGRALS))
def test_integral_enclosures_contain_oracle(key):
    kernel, y, coeff = key
    enc = kernel_integral(kernel, y)
    val = INTEGRALS[key]
    c = float(coeff)
    assert enc.lo * c <= val * (1 + 1e-13) and val * (1 - 1e-13) <= enc.hi * c
    assert enc.width < 1e-12


def test_integrals_lower_bound_example():
    sinh, cosh = cf_integrals("0.1", "0.8", "0.4")
    assert sinh.lower > 0.0605
    assert sinh.lower <= sinh.upper and cosh.lower <= cosh.upper


def test_enclosures_nest_as_budget_grows():
    prev = None
    for panels in (60, 120, 240, 480):
        enc = kernel_integral("sinh", "1", tol=None, max_panels=panels)
        if prev is not None:
            assert prev.lo <= enc.lo and enc.hi <= prev.hi
        prev = enc


def test_constants_are_recorded():
    assert set(bounds.CONSTANT_NOTES) == {"psi", "xi", "rho"}
