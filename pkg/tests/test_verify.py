from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from avgord.families import build
from avgord.group import CayleyGroup, as_cayley, relabel
from avgord.invariants import avg_order
from avgord.iso import is_isomorphic
from avgord.verify import (
    LEMMAS,
    UnknownLemma,
    candidates,
    classify,
    density_gap,
    recognizability,
    verify_density,
    verify_lemma,
    verify_tables,
    verify_theorem_a,
)


def test_classify_examples():
    assert classify(build("Sym(4)")).case == "ii"
    out = classify(build("C6"))
    assert not out.in_list and out.reason == "avg ≥ 14/5"
    assert avg_order(build("C6")) == Fraction(7, 2)
    out = classify(build("EA(2,5)"))
    assert (out.case, out.sub, out.param) == ("v", 3, 5)
    assert out.label == "Case_v(3) m=5"


@pytest.mark.parametrize("desc, case, sub, param", [
    ("D12", "i", None, None), ("C3", "iii", None, None), ("C3xC3", "iii", None, None),
    ("Alt(4)", "iv", None, 1), ("Frob2(2)", "iv", None, 2), ("C4", "v", 1, None),
    ("D8", "v", 2, 0), ("D8 x EA(2,2)", "v", 2, 2), ("C1", "v", 3, 0),
    ("GD(C4xC4)", "v", 4, 0), ("H(2)", "v", 5, 0), ("Sgrp(2) x C2", "v", 6, 1),
    ("Sym(3)", "vi", None, 1), ("GD(C3xC3)", "vi", None, 2),
])
def test_classify_listed(desc, case, sub, param):
    out = classify(build(desc))
    assert (out.case, out.sub, out.param) == (case, sub, param)


@pytest.mark.parametrize("desc", ["C2xD12", "CProd(D8,C4)", "D8xD8", "Alt(5)", "C6", "D10"])
def test_classify_not_listed(desc):
    assert not classify(build(desc)).in_list


def test_classify_below_bound_but_unlisted_is_impossible():
    # Q8 has avg 27/8 > 14/5, so it stops at the avg screen
    q8 = next(CayleyGroup(t) for t in oracles.groups_of_order(8)
              if oracles.spectrum(t).get(2) == 1 and 8 not in oracles.spectrum(t))
    assert classify(q8).reason == "avg ≥ 14/5"


def test_candidates_cover_orders():
    assert [c[3] for c in candidates(12)] == ["D12", "Frob2(1)"]
    assert [c[0] for c in candidates(32)] == ["v"] * 5
    assert candidates(5) == []


@given(data=st.data())
def test_classify_relabel_invariant(catalog, data):
    small = [r for r in catalog if r.order <= 64]
    rec = data.draw(st.sampled_from(small))
    g = as_cayley(rec.group())
    perm = [0] + list(data.draw(st.permutations(list(range(1, g.order)))))
    assert classify(relabel(g, perm)) == classify(g)


def test_theorem_a(catalog):
    rep = verify_theorem_a(catalog)
    assert rep.passed and rep.hypothesis_hits > 0
    assert rep.tested == len(catalog)


def test_theorem_a_order_12_and_9(catalog):
    for n, listed in ((12, {"Alt(4)", "D12"}), (9, {"C3xC3"})):
        recs = [r for r in catalog if r.order == n and r.source == "census"]
        hit = [r for r in recs if classify(r.group()).in_list]
        assert len(hit) == len(listed)
        for d in listed:
            assert any(is_isomorphic(r.group(), build(d)) for r in hit)
    c9 = next(r for r in catalog if r.order == 9 and 9 in r.spectrum.counts)
    assert c9.avg == Fraction(61, 9) and not classify(c9.group()).in_list


def test_tables():
    rep = verify_tables(6)
    assert rep.passed
    rows = {(r["row"], r["k"]): r for r in rep.rows}
    for k in range(1, 5):
        assert rows[("C2^2k:C3", k)]["psi"] == 2 ** (2 * k + 3) - 1
    for k in range(1, 7):
        assert Fraction(rows[("C3^k:C2", k)]["avg"]) == Fraction(5, 2) - Fraction(1, 3 ** k)
    for k in range(0, 5):
        assert rows[("D8xC2^k", k)]["psi"] == 5 * 2 ** (k + 2) - 1
    # the printed psi column of the three 2^(k+5) families disagrees with the avg column
    assert len(rep.flags) == 3 * 7
    for f in rep.flags:
        assert f["derived_psi"] == 11 * 2 ** (f["k"] + 3) - 1
        assert f["printed_psi"] == 11 * 2 ** (f["k"] + 4) - 1


@pytest.mark.parametrize("lemma", sorted(LEMMAS))
def test_lemma_suites(lemma, catalog):
    rep = verify_lemma(lemma, catalog)
    assert rep.passed, rep.violations[:3]
    assert rep.hypothesis_hits > 0 and not rep.vacuous
    js = rep.to_json()
    assert js["lemma"] == lemma and js["violations"] == []


def test_parity_covers_catalog(catalog):
    rep = verify_lemma("parity", catalog)
    assert rep.hypothesis_hits == len(catalog)
    assert all(r.psi % 2 for r in catalog)


def test_stipe_minimum(catalog):
    multi = [r for r in catalog if len({p for p in range(2, r.order + 1)
                                        if r.order % p == 0
                                        and all(p % d for d in range(2, p))}) >= 2]
    lo = min(r.avg for r in multi)
    at_min = [r for r in multi if r.avg == lo]
    assert lo == Fraction(13, 6)
    assert len(at_min) == 1 and is_isomorphic(at_min[0].group(), build("Sym(3)"))


def test_lt24_solution_set(catalog):
    below = [r for r in catalog if r.avg < Fraction(12, 5)]
    listed = ("C3", "D8", "Sym(3)", "GD(C3xC3)")
    for r in below:
        elem = set(r.spectrum.counts) <= {1, 2}
        assert elem or any(r.order == build(d).order and is_isomorphic(r.group(), build(d))
                           for d in listed)
    for d in listed:
        assert any(r.order == build(d).order and is_isomorphic(r.group(), build(d))
                   for r in below)


def test_wall_d8_c4_misses_hypothesis(catalog):
    rec = next(r for r in catalog if r.avg == Fraction(47, 16))
    assert rec.spectrum.n(2) == 7 == rec.order // 2 - 1


def test_cls2_census_range(catalog):
    found = sorted(r.name for r in catalog
                   if r.source == "census" and r.order <= 16 and r.order & (r.order - 1) == 0
                   and r.avg < Fraction(14, 5))
    assert found == sorted(["EA(2,0)", "EA(2,1)", "EA(2,2)", "EA(2,3)", "EA(2,4)",
                            "C4", "D8", "D8 x EA(2,1)"])


def test_unknown_lemma(catalog):
    with pytest.raises(UnknownLemma):
        verify_lemma("nope", catalog)


def test_recognizability(catalog):
    rep = recognizability(catalog)
    assert rep.passed
    assert sorted(rep.class_of(Fraction(11, 4))) == ["C4", "D12"]
    assert sorted(rep.class_of(Fraction(87, 32))) == ["CProd(D8,D8)", "GD(Ab(4,4))", "Sgrp(2)"]
    assert rep.class_of(Fraction(67, 24)) == ["Sym(4)"]
    assert "catalog-relative" in rep.to_json()["scope"]


def test_density(catalog):
    assert [r.name for r in density_gap(catalog, Fraction(67, 24), Fraction(14, 5))] == ["Sym(4)"]
    assert [r.order for r in density_gap(catalog, Fraction(1), Fraction(1))] == [1]
    assert density_gap(catalog, Fraction(2), Fraction(2)) == []
    rep = verify_density(catalog)
    assert rep.passed and rep.hypothesis_hits == 1
