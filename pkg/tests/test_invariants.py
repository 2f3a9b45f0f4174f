from fractions import Fraction

import pytest

from covol.errors import NonIntegralDegree, UnverifiedUnits
from covol.invariants import (ClassInvariants, UnitSystem, degree_kB, degree_kprime, gf2_rank,
                              minkowski_bound, totally_positive_classes, unit_index, unit_system,
                              verify_class_number)
from covol.numfield import build_field

from oracle_values import PARI


def test_unit_index_examples(records):
    k5 = build_field("x^2-x-1")
    us = unit_system(k5, [(-1, 1)])
    assert unit_index(us) == (4, True)
    assert records[49].ci.u_plus_sq
    assert records[725].ci.u_index == 16


def test_totally_positive_units_give_index_two():
    k5 = build_field("x^2-x-1")
    eps2 = k5.mul((0, 1), (0, 1))  # theta^2 is totally positive
    assert unit_index(unit_system(k5, [eps2])) == (2, False)


def test_unverified_units_rejected():
    k5 = build_field("x^2-x-1")
    with pytest.raises(UnverifiedUnits):
        unit_index(unit_system(k5, [(2, 1)]))


@pytest.mark.parametrize("poly, bound", [("x^2-x-1", Fraction(112, 100)),
                                         ("x^3-x^2-2x+1", Fraction(156, 100)),
                                         ("x^4-x^3-3x^2+x+1", Fraction(253, 100))])
def test_minkowski_bound(poly, bound):
    mb = minkowski_bound(build_field(poly))
    assert mb <= bound
    assert mb > bound - Fraction(1, 100)


def test_class_number_verification(records):
    assert verify_class_number(build_field("x^2-x-1"), 1) == (1, "proven")
    assert verify_class_number(records[725].field, 1) == (1, "proven")
    assert verify_class_number(records[14641].field, 1)[0] == 1


def test_degree_kprime_and_kB_examples(records):
    ci = records[725].ci
    assert degree_kprime(ci) == (1, True)
    assert degree_kB(ci) == 1
    assert records[4352].ci.kB_deg == 2 and records[4352].ci.u_index == 8
    assert records[257].ci.kB_deg == 2
    fake = ClassInvariants(h=2, h_provenance="table", cl_2rank=1, u_index=4, u_plus_sq=False, t=1, m=2)
    assert degree_kprime(fake) == (2, False)
    bad = ClassInvariants(h=1, h_provenance="table", cl_2rank=0, u_index=8, u_plus_sq=False, t=1, m=2)
    with pytest.raises(NonIntegralDegree):
        degree_kB(bad)


def test_all_fields_against_oracle(records):
    for d, (m, h, h_plus, t, _) in PARI.items():
        ci = records[d].ci
        assert ci.m == m and ci.h == h and ci.t == t
        # for h = 1 the degree [k_B:k] is the narrow class number
        assert ci.kB_deg == h_plus
        assert ci.u_index * totally_positive_classes(ci.units) == 2 ** m
        if minkowski_bound(records[d].field) < 2:
            assert ci.h_provenance == "proven"


def test_gf2_rank():
    assert gf2_rank([(1, 1), (1, 0), (0, 1)]) == 2
    assert gf2_rank([(0, 0)]) == 0
