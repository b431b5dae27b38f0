import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from avgord.config import BoundExceeded
from avgord.families import build
from avgord.group import CayleyGroup, as_cayley, is_normal, quotient, subgroup_closure, whole_group
from avgord.invariants import (
    Complement,
    Coset,
    OrderSpectrum,
    SpectrumSummary,
    automorphism_list,
    automorphism_permutations,
    avg_order,
    identity_automorphism,
    index_two_subgroups,
    inversion_ratio,
    is_abelian,
    is_nilpotent,
    is_nilpotent_by_sylow,
    is_solvable,
    minimal_normal_subgroups,
    n_k_in_subset,
    normal_subgroups,
    order_spectrum,
    prime_factors,
    psi,
    subgroup_lattice,
    subgroup_psi,
    summary,
    sylow,
)
from avgord.iso import is_isomorphic


@st.composite
def small_groups(draw, max_order=16):
    n = draw(st.integers(min_value=1, max_value=max_order))
    return draw(st.sampled_from(oracles.groups_of_order(n)))


# -- spectra --------------------------------------------------------------------

def test_spectrum_examples():
    assert order_spectrum(build("Sym(4)")).counts == {1: 1, 2: 9, 3: 8, 4: 6}
    for k in range(0, 6):
        assert order_spectrum(build(f"EA(2,{k})")).counts == ({1: 1, 2: 2**k - 1} if k else {1: 1})
    assert order_spectrum(build("D10")).counts == {1: 1, 2: 5, 5: 4}


def test_psi_examples():
    g = build("D12")
    assert (psi(g), avg_order(g)) == (33, Fraction(11, 4))
    g = build("C4")
    assert (psi(g), avg_order(g)) == (11, Fraction(11, 4))
    assert avg_order(build("C6")) == Fraction(7, 2)


def test_summary_json():
    s = summary(build("Sym(4)"))
    assert s == SpectrumSummary.of(order_spectrum(build("Sym(4)")))
    assert s.to_json() == {"order": 24, "psi": 67,
                           "avg": {"num": 67, "den": 24, "approx": "2.791667"},
                           "spectrum": {"1": 1, "2": 9, "3": 8, "4": 6},
                           "primes": [2, 3], "exponent": 12}
    spec = OrderSpectrum.from_json(s.spectrum.to_json())
    assert spec == s.spectrum


@given(small_groups())
def test_spectrum_invariants(t):
    g = CayleyGroup(t)
    spec = order_spectrum(g)
    assert spec.counts == oracles.spectrum(t)
    assert spec.total == len(t) and spec.n(1) == 1
    assert all(spec.exponent % k == 0 for k in spec.counts)
    assert all(v % 2 == 0 for k, v in spec.counts.items() if k > 2)
    assert spec.psi % 2 == 1
    s = summary(g)
    assert s.avg == Fraction(s.psi, s.order)
    assert list(s.primes) == [p for p in range(2, len(t) + 1) if len(t) % p == 0
                              and all(p % d for d in range(2, p))]


# -- subsets --------------------------------------------------------------------

def test_n_k_in_subset_examples():
    s3 = as_cayley(build("Sym(3)"))
    c3 = [x for x in range(6) if s3.orders[x] == 3]
    h = subgroup_closure(s3, c3)
    assert h.order == 3
    assert n_k_in_subset(s3, Complement(h), 2) == 3
    assert n_k_in_subset(s3, Complement(whole_group(s3)), 2) == 0
    for k in (1, 2, 3):
        g = as_cayley(build(f"GD(EA(3,{k}))"))
        n = subgroup_closure(g, [x for x in range(g.order) if g.orders[x] == 3])
        assert n.order == 3**k
        outer = next(x for x in range(g.order) if x not in n)
        assert n_k_in_subset(g, Coset(n, outer), 2) == 3**k
        assert n_k_in_subset(g, n, 2) == 0


def test_malformed_subset():
    g = build("Sym(3)")
    with pytest.raises(TypeError):
        n_k_in_subset(g, [0, 1], 2)
    with pytest.raises(ValueError):
        n_k_in_subset(g, Coset(whole_group(g), 99), 2)


# -- Sylow, nilpotency, solvability ---------------------------------------------

def test_sylow_examples():
    s4 = build("Sym(4)")
    p = sylow(s4, 2)
    assert p.order == 8
    sub = CayleyGroup(_sub_table(s4, p.members))
    assert is_isomorphic(sub, build("D8"))
    c3 = build("C3")
    assert sylow(c3, 3).order == 3
    a4 = build("Alt(4)")
    v = sylow(a4, 2)
    assert v.order == 4 and is_normal(a4, v)
    assert all(as_cayley(a4).orders[x] <= 2 for x in v.members)
    with pytest.raises(ValueError):
        sylow(c3, 2)


def _sub_table(g, members):
    t = as_cayley(g).table
    members = sorted(members)
    index = {m: i for i, m in enumerate(members)}
    return [[index[int(t[a, b])] for b in members] for a in members]


@given(small_groups(), st.data())
def test_sylow_has_full_p_part(t, data):
    n = len(t)
    if n == 1:
        return
    p = data.draw(st.sampled_from(prime_factors(n)))
    g = CayleyGroup(t)
    s = sylow(g, p)
    pa = p ** next(a for a in range(n) if n % p ** (a + 1))
    assert s.order == pa
    assert oracles.closure(t, list(s.members)) == set(s.members)


def test_nilpotent_solvable_examples():
    d8, s3, a4 = build("D8"), build("Sym(3)"), build("Alt(4)")
    assert is_nilpotent(d8)
    assert is_solvable(s3) and not is_nilpotent(s3)
    assert is_solvable(a4) and not is_nilpotent(a4)
    assert not is_solvable(build("Alt(5)"))
    assert is_abelian(build("Ab(2,4)")) and not is_abelian(d8)


@given(small_groups())
def test_nilpotency_two_ways(t):
    g = CayleyGroup(t)
    assert is_nilpotent(g) == is_nilpotent_by_sylow(g)


@given(small_groups())
def test_nilpotent_product_formula(t):
    g = CayleyGroup(t)
    if not is_nilpotent(g):
        return
    prod = Fraction(1)
    for p in prime_factors(len(t)):
        prod *= avg_order(CayleyGroup(_sub_table(g, sylow(g, p).members)))
    assert avg_order(g) == prod


# -- lattices -------------------------------------------------------------------

def test_lattice_examples():
    assert len(subgroup_lattice(build("C5"))) == 2
    assert len(subgroup_lattice(build("EA(2,2)"))) == 5
    assert len(subgroup_lattice(build("Sym(3)"))) == 6
    with pytest.raises(BoundExceeded):
        subgroup_lattice(build("Sym(6)"))


@given(small_groups(12))
def test_lattice_matches_oracle(t):
    g = CayleyGroup(t)
    got = {frozenset(h.members) for h in subgroup_lattice(g)}
    # oracle: closures of all subsets of size <= 3 cover every subgroup at these orders
    n = len(t)
    want = set()
    for a in range(n):
        for b in range(a, n):
            want.add(frozenset(oracles.closure(t, [a, b])))
            for c in range(b, n):
                want.add(frozenset(oracles.closure(t, [a, b, c])))
    assert got == want
    normals = {frozenset(h.members) for h in normal_subgroups(g)}
    assert normals == {h for h in want if oracles.is_normal(t, h)}


def test_minimal_normal_examples():
    s4 = build("Sym(4)")
    mins = minimal_normal_subgroups(s4)
    assert len(mins) == 1 and mins[0].order == 4
    c5 = build("C5")
    assert [h.order for h in minimal_normal_subgroups(c5)] == [5]
    assert sorted(h.order for h in minimal_normal_subgroups(build("C6"))) == [2, 3]


@given(small_groups())
def test_minimal_normal_matches_oracle(t):
    g = CayleyGroup(t)
    normals = [frozenset(h.members) for h in normal_subgroups(g) if h.order > 1]
    want = {h for h in normals if not any(o < h for o in normals)}
    assert {frozenset(h.members) for h in minimal_normal_subgroups(g)} == want


# -- automorphisms --------------------------------------------------------------

def test_automorphism_examples():
    assert len(automorphism_list(build("EA(2,2)"))) == 6
    assert len(automorphism_list(build("C3"))) == 2
    assert len(automorphism_list(build("D8"))) == 8
    with pytest.raises(BoundExceeded):
        automorphism_list(build("Sym(5)"))


@given(small_groups(12))
def test_automorphism_count_matches_oracle(t):
    assert len(automorphism_permutations(CayleyGroup(t))) == len(oracles.automorphisms(t))


def test_inversion_ratio_examples():
    for k in (1, 2, 3):
        g = build(f"EA(2,{k})")
        assert inversion_ratio(g, identity_automorphism(g)) == 1
    c3 = build("C3")
    assert inversion_ratio(c3, identity_automorphism(c3)) == Fraction(1, 3)
    for d in ("C5", "Ab(2,4)", "Ab(3,3)"):
        g = as_cayley(build(d))
        assert inversion_ratio(g, g.inverses) == 1
    with pytest.raises(ValueError):
        inversion_ratio(c3, np.array([0, 0, 0]))


# -- lemma-shaped properties ------------------------------------------------------

@given(small_groups())
def test_quotient_inequality(t):
    g = CayleyGroup(t)
    og = avg_order(g)
    for h in normal_subgroups(g):
        if h.order == 1:
            continue
        q = quotient(g, h)
        lhs = Fraction(subgroup_psi(h) - h.order, g.order) + avg_order(q)
        assert lhs <= og
        assert avg_order(q) < og


@given(small_groups())
def test_index_two_bound(t):
    g = CayleyGroup(t)
    for h in index_two_subgroups(g):
        assert h.order * 2 == g.order
        oh = Fraction(subgroup_psi(h), h.order)
        assert avg_order(g) >= oh / 2 + 1


@given(small_groups(12))
def test_potter_implication(t):
    g = CayleyGroup(t)
    for phi in automorphism_permutations(g):
        r = inversion_ratio(g, phi)
        for p in prime_factors(len(t)):
            if r > Fraction(2, p + 1):
                assert is_normal(g, sylow(g, p))


def test_lcm_exponent():
    assert summary(build("Sym(4)")).exponent == math.lcm(1, 2, 3, 4)
