from fractions import Fraction

import pytest

from covol.errors import IndexObstruction, NotTotallyReal, ZeroElement
from covol.numfield import build_field, count_places_over_2, embed, is_prime, signs, split_prime
from covol.polynomial import count_real_roots

PRIMES_1000 = [p for p in range(2, 1001) if is_prime(p)]

# splitting (e, f) data frozen from an independent PARI/GP run (idealprimedec)
PARI_SPLITTING = {
    725: {2: [(1, 4)], 3: [(1, 4)], 5: [(2, 2)], 7: [(1, 2), (1, 2)]},
    49: {2: [(1, 3)], 3: [(1, 3)], 5: [(1, 3)], 7: [(3, 1)]},
    2225: {2: [(1, 2), (1, 2)], 3: [(1, 4)], 5: [(2, 2)], 7: [(1, 4)]},
    5: {2: [(1, 2)], 3: [(1, 2)], 5: [(2, 1)], 7: [(1, 2)]},
}


def test_build_field_examples():
    k5 = build_field("x^2-x-1")
    assert (k5.degree, k5.field_disc) == (2, 5)
    k49 = build_field("x^3-x^2-2x+1")
    assert (k49.degree, k49.field_disc) == (3, 49)
    with pytest.raises(NotTotallyReal):
        build_field("x^2+1")


def test_index_prime_needs_override():
    with pytest.raises(IndexObstruction):
        split_prime(build_field("x^4-x^3-5x^2+2x+4"), 2)


def test_index_stripping():
    # polynomial discriminant 8900 = 2225 * 2^2 and 176400 = 3600 * 7^2
    k = build_field("x^4-x^3-5x^2+2x+4")
    assert (k.poly_disc, k.field_disc, k.index_sq) == (8900, 2225, 4)
    k = build_field("x^4-2x^3-7x^2+8x+1")
    assert (k.poly_disc, k.field_disc) == (176400, 3600)


@pytest.mark.parametrize("disc", sorted(PARI_SPLITTING))
def test_splitting_matches_pari(disc, records):
    k = records[disc].field
    for p, efs in PARI_SPLITTING[disc].items():
        got = sorted((v.e, v.f) for v in split_prime(k, p).places)
        assert got == sorted(efs)


def test_split_examples_and_t():
    k725 = build_field("x^4-x^3-3x^2+x+1")
    st = split_prime(k725, 2)
    assert st.factors == ((1, 4),) and st.norms == (16,)
    assert any(e == 2 for e, _ in split_prime(k725, 5).factors)
    assert count_places_over_2(build_field("x^2-x-1")) == 1


def test_t_for_table_quintics(records):
    assert count_places_over_2(records[81589].field) == 2
    assert count_places_over_2(records[24217].field) == 1


def test_splitting_sums_and_ramification_over_all_fields(records):
    for fr in records.values():
        k = fr.field
        assert count_real_roots(k.coeffs) == k.degree
        for p in PRIMES_1000:
            st = split_prime(k, p)
            assert sum(e * f for e, f in st.factors) == k.degree
            if any(e > 1 for e, _ in st.factors):
                assert k.field_disc % p == 0


def test_embeddings_and_signs():
    k5 = build_field("x^2-x-1")
    ivs = embed(k5, (0, 1), Fraction(1, 10 ** 12))
    vals = sorted(float(iv.mid) for iv in ivs)
    assert vals == pytest.approx([-0.6180339887498949, 1.618033988749895])
    assert sorted(signs(k5, (-1, 1))) == [-1, 1]
    assert signs(k5, (1,)) == (1, 1)
    with pytest.raises(ZeroElement):
        signs(k5, (0, 0))


def test_embeddings_nest_under_refinement(records):
    for d in (725, 49, 14641):
        k = records[d].field
        for i in range(k.degree):
            coarse = k.root_interval(i, 20)
            fine = k.root_interval(i, 40)
            assert coarse[0] <= fine[0] <= fine[1] <= coarse[1]
