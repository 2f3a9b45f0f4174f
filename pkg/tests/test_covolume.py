from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from covol.covolume import (QuaternionData, aut_bound, chi_maximal, covolume_report, ep_measure, g_value,
                            mu_value, vigneras_chi)
from covol.errors import MissingInvariant, ParityError, TPrimeExceedsT
from covol.numfield import FinitePlace, split_prime


def report(fr, inf=0, fin=()):
    return covolume_report(fr.field, QuaternionData(fr.degree, inf, tuple(fin)), fr.ci, fr.zeta.zeta_minus1)


def test_g_examples(records):
    assert g_value(4, 1, 1, Fraction(2, 15)) == Fraction(1, 120)
    assert g_value(3, 1, 1, Fraction(-1, 21)) == Fraction(1, 168)
    assert g_value(5, 2, 1, Fraction(-32, 3)) == Fraction(1, 6)
    assert records[725].g0 == Fraction(1, 120)
    assert records[49].g0 == Fraction(1, 168)
    with pytest.raises(MissingInvariant):
        g_value(4, 1, None, Fraction(2, 15))


def test_mu_examples():
    assert mu_value(Fraction(1, 120), 1, 0) == Fraction(1, 60)
    assert mu_value(Fraction(1, 60), 1, 0) == Fraction(1, 30)
    assert mu_value(Fraction(1, 7), 2, 2) == Fraction(1, 7)
    with pytest.raises(TPrimeExceedsT):
        mu_value(Fraction(1, 7), 1, 2)


def test_chi_maximal_examples(records):
    assert report(records[49]).chi_max == Fraction(1, 84)
    assert report(records[5]).chi_max == Fraction(1, 60)
    assert report(records[725]).chi_max == Fraction(1, 60)
    rep = report(records[725], inf=2)
    assert rep.chi_max == Fraction(1, 60) and rep.quaternion.uniform


def test_norm_three_place_is_neutral(records):
    fr = records[1957]
    v3 = [v for v in split_prime(fr.field, 3).places if v.norm == 3]
    assert len(v3) == 1
    rep = report(fr, inf=1, fin=v3)
    assert chi_maximal(rep.mu, v3) == rep.mu
    assert any("norm-3" in f for f in rep.flags)


def test_vigneras_examples(records):
    assert vigneras_chi(2, 2, Fraction(1, 30), ()) == Fraction(1, 60)
    assert 2 * vigneras_chi(2, 2, Fraction(1, 30), ()) == Fraction(1, 30)
    assert vigneras_chi(2, 2, Fraction(1, 30), (), gen_index=Fraction(2)) == Fraction(1, 30)
    rep = report(records[49])
    assert rep.chi_norm1 == Fraction(-1, 42)
    assert rep.vigneras_ratio == -2
    assert any("vigneras-discrepancy" in f for f in rep.flags)
    assert not any("vigneras" in f for f in report(records[5]).flags)


def test_ep_and_aut_examples():
    assert ep_measure(Fraction(1, 60), 2) == Fraction(1, 15)
    assert ep_measure(Fraction(1, 84), 3) == Fraction(2, 21)
    assert ep_measure(Fraction(1, 60), 4) == Fraction(4, 15)
    assert aut_bound(Fraction(1)) == 60
    assert aut_bound(Fraction(1, 60)) == 1
    assert aut_bound(Fraction(2)) == 120


def test_parity_rejected():
    with pytest.raises(ParityError):
        QuaternionData(4, 1)
    with pytest.raises(ParityError):
        QuaternionData(4, 0, (FinitePlace(2, 4, 1),))
    QuaternionData(4, 1, (FinitePlace(2, 4, 1),))


@given(st.integers(2, 5), st.integers(0, 5), st.integers(0, 5), st.integers(1, 4),
       st.fractions(min_value=Fraction(1, 1000), max_value=100))
def test_g_le_mu_le_2t_g(m, t, tp, kB, z):
    t = max(1, min(t, m))
    tp = min(tp, t)
    g = g_value(m, t, kB, (-1) ** m * z)
    mu = mu_value(g, t, tp)
    assert g <= mu <= 2 ** t * g
    r = mu / g
    assert r.denominator == 1 and r.numerator & (r.numerator - 1) == 0


@given(st.lists(st.sampled_from([4, 5, 7, 8, 9, 11, 13, 16, 25]), max_size=3), st.sampled_from([4, 5, 7, 9, 11]))
def test_adding_a_large_place_increases_chi(norms, extra):
    mu = Fraction(1, 60)
    base = [FinitePlace(n, 1, 1, idx=i) for i, n in enumerate(norms)]
    new = base + [FinitePlace(extra, 1, 1, idx=99)]
    assert chi_maximal(mu, new) > chi_maximal(mu, base)
    assert chi_maximal(mu, base + [FinitePlace(3, 1, 1, idx=98)]) == chi_maximal(mu, base)


def test_norm_two_place_halves_mu():
    g = Fraction(1, 48)
    assert mu_value(g, 2, 1) == mu_value(g, 2, 0) / 2


def test_split_algebras_over_all_fields(records):
    for fr in records.values():
        rep = report(fr)
        assert rep.chi_max == rep.mu == fr.g0 * 2 ** fr.ci.t
        assert rep.ep_min == rep.chi_max * 2 ** fr.degree


def test_report_json_fields(records):
    d = report(records[725]).as_dict()
    assert d["chi_max"] == "1/60" and d["ep_min"] == "4/15" and d["aut_bound"] == 1
