import json
from fractions import Fraction

import pytest

from covol.dataset import Dataset
from covol.errors import DatasetIncomplete
from covol.survey import (classify, discrepancy_report, emit_tables, enumerate_ramification, field_record,
                          parallel_map, prune_cascade)


def caps(plan):
    return {s.name: s.degree_cap for s in plan.stages}


def test_chi_plan_at_one_sixtieth():
    plan = prune_cascade(Fraction(1, 60))
    c = caps(plan)
    assert (c["psi"], c["xi"], c["rho"]) == (23, 9, 5)
    assert plan.windows == {2: 14, 3: 254, 4: 4704, 5: 86741}
    assert plan.windows[3] <= 300 and plan.windows[4] <= 4800 and plan.windows[5] <= 89000


def test_ep_plan_at_one_fifteenth():
    plan = prune_cascade(Fraction(1, 15), "ep")
    c = caps(plan)
    assert c["Psi-diagonal"] == 12
    assert c["R-diagonal"] == 4
    assert plan.chi_budget == Fraction(1, 60)
    assert plan.degree_cap == 5


def test_large_budget_gives_no_usable_cap():
    plan = prune_cascade(10)
    assert plan.degree_cap is None or plan.degree_cap > 5
    with pytest.raises(DatasetIncomplete):
        classify(Dataset((), {}, "empty", "-"), 10)


def test_ramification_k725(records):
    ch = {c.n: c for c in enumerate_ramification(records[725], Fraction(1, 60))}
    assert ch[2].quaternion.inf_ramified == 2 and not ch[2].quaternion.fin_ramified
    assert ch[2].chi == Fraction(1, 60)
    assert ch[3].chi > Fraction(1, 60) and ch[3].proven_minimal
    w = [v for v in ch[3].quaternion.fin_ramified if v.norm != 2]
    # cheapest place: one of the two degree-one places above 11
    assert [(v.p, v.norm) for v in w] == [(11, 11)]
    assert ch[3].chi == Fraction(1, 12)
    assert ch[4].chi == Fraction(1, 60)


def test_ramification_k49(records):
    ch = {c.n: c for c in enumerate_ramification(records[49], Fraction(1, 60))}
    assert ch[3].chi == Fraction(1, 84)
    w = ch[2].quaternion.fin_ramified
    assert len(w) == 1 and w[0].norm == 7
    assert Fraction(w[0].norm - 1, 2) > 2
    assert ch[2].chi == Fraction(1, 28) > Fraction(1, 60)


def labels(rep):
    return [s.label for s in rep.survivors]


def test_classify_chi(dataset):
    rep = classify(dataset, Fraction(1, 60))
    assert [s.label for s in rep.minima] == ["Delta^nu_{k_49} in G_3"]
    assert rep.minima[0].chi == Fraction(1, 84)
    got = {(s.disc, s.quaternion.n, s.quaternion.uniform): s.chi for s in rep.survivors}
    assert got[(5, 2, False)] == Fraction(1, 60)
    assert got[(725, 2, True)] == Fraction(1, 60)
    assert got[(725, 4, False)] == Fraction(1, 60)
    assert all(row["exceeds_budget"] for row in rep.soundness)
    assert sorted(rep.excluded["alpha"]) == [257, 4752]


def test_quadratic_window(dataset):
    plan = prune_cascade(Fraction(1, 60))
    quad = [r.disc for r in dataset.of_degree(2) if r.disc < plan.windows[2]]
    assert quad == [5, 8, 12, 13]
    rep = classify(dataset, Fraction(1, 60))
    assert sorted({s.disc for s in rep.survivors if s.degree == 2}) == [5]


def test_tiny_budget_is_empty(dataset):
    rep = classify(dataset, Fraction(1, 1000))
    assert rep.survivors == [] and rep.minima == []


def test_determinism(dataset):
    a = json.dumps(classify(dataset, Fraction(1, 60)).as_dict(), sort_keys=True)
    b = json.dumps(classify(dataset, Fraction(1, 60)).as_dict(), sort_keys=True)
    assert a == b


def test_parallel_matches_serial(dataset):
    recs = [r for r in dataset.records if r.degree <= 3]
    serial = [field_record(r) for r in recs]
    parallel = parallel_map(field_record, recs, 2)
    assert [(f.disc, f.g0, f.zeta.zeta_minus1, f.ci.kB_deg) for f in serial] == \
           [(f.disc, f.g0, f.zeta.zeta_minus1, f.ci.kB_deg) for f in parallel]


def test_tables(dataset):
    tables = emit_tables(dataset)
    assert [len(tables[n]) for n in ("quintic", "quartic", "cubic")] == [8, 16, 6]
    row = tables["quintic"][0]
    assert row.disc == 14641 and row.g == Fraction(20, 1056)
    assert any("suspected-typo" in a and "0.18939" in a for a in row.annotations)
    by = {r.disc: r for rows in tables.values() for r in rows}
    assert by[725].g == Fraction(1, 120) and by[49].g == Fraction(1, 168)
    assert any("printed-inconsistent" in a for a in by[3981].annotations)


def test_discrepancy_report_lists_both_values(dataset):
    rows = discrepancy_report(dataset)
    topics = {r["topic"] for r in rows}
    assert {"decimal-slip", "vigneras-vs-borel", "norm-3-edge", "k725-forced-place"} <= topics
    for r in rows:
        assert r["printed"] and r["computed"]
