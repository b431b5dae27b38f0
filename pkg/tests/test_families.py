from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from avgord.canon import canonical_form
from avgord.config import BoundExceeded
from avgord.descriptor import ParseError, parse_descriptor
from avgord.families import NotAbelianError, build, cyclic, descriptor_order
from avgord.group import CayleyGroup, as_cayley, direct_product, relabel
from avgord.invariants import avg_order, order_spectrum, psi
from avgord.iso import find_isomorphism, is_homomorphism, is_isomorphic


def n2(g):
    return order_spectrum(g).n(2)


# -- descriptors ----------------------------------------------------------------

def test_parse_examples():
    assert repr(parse_descriptor("D12")) == "Dih(m=6)"
    assert str(parse_descriptor("GD(C4xC4)")) == "GD(Ab(4,4))"
    d = parse_descriptor("Frob2(3) x C2")
    assert repr(d) == "Prod(left=Frob2(k=3), right=Cyc(n=2))"


@pytest.mark.parametrize("bad", ["D7", "Foo(3)", "C0", "C3x", "EA(4,2)", "", "Sym(", "C2 y C3"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_descriptor(bad)


def test_parse_error_has_position():
    with pytest.raises(ParseError) as err:
        parse_descriptor("C3x")
    assert err.value.pos == 3


@pytest.mark.parametrize("text", ["D12", "GD(C4xC4)", "Frob2(3) x C2", "CProd(D8,D8)",
                                  "H(2) x EA(2,1)", "Sgrp(3)", "Alt(5)", "EA(3,2)"])
def test_str_reparses(text):
    d = parse_descriptor(text)
    assert parse_descriptor(str(d)) == d
    assert descriptor_order(d) == build(d).order


# -- constructors ---------------------------------------------------------------

def test_build_examples():
    g = build("Sym(4)")
    assert (g.order, psi(g)) == (24, 67)
    assert build("C1").order == 1
    a4 = build("Frob2(1)")
    assert (a4.order, psi(a4)) == (12, 31)
    assert is_isomorphic(a4, build("Alt(4)"))
    assert psi(build("D10")) == 31


def test_build_bound():
    with pytest.raises(BoundExceeded):
        build("Sym(8)", bound=1000)


def test_generalized_dihedral():
    s3 = build("GD(C3)")
    assert is_isomorphic(s3, build("Sym(3)"))
    assert avg_order(s3) == Fraction(13, 6)
    assert avg_order(build("GD(C5xC5)")) == Fraction(171, 50)
    g = build("GD(C4xC4)")
    assert g.order == 32 and avg_order(g) == Fraction(87, 32)
    with pytest.raises(NotAbelianError):
        build("GD(Sym(3))")


def test_gd_of_cyclic_is_dihedral():
    for m in (3, 4, 5, 6, 8):
        assert is_isomorphic(build(f"GD(C{m})"), build(f"D{2 * m}"))


def test_extraspecial_and_s_groups():
    d8 = build("D8")
    assert is_isomorphic(build("H(1)"), d8)
    assert is_isomorphic(build("Sgrp(1)"), d8)
    h2, s2 = build("H(2)"), build("Sgrp(2)")
    assert (h2.order, n2(h2)) == (32, 19)
    assert (s2.order, n2(s2), psi(s2)) == (32, 19, 87)
    assert order_spectrum(h2) == order_spectrum(s2)
    assert not is_isomorphic(h2, s2)
    h3 = build("H(3)")
    assert (h3.order, n2(h3)) == (128, 71)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_n2_formula(r):
    want = 2 ** (2 * r) + 2 ** r - 1
    assert n2(build(f"H({r})")) == want
    assert n2(build(f"Sgrp({r})")) == want


def test_s_group_relations():
    # every generator has order 2 and the derived subgroup is central of order 2^r
    from avgord.group import center, derived_subgroup
    for r in (1, 2, 3):
        g = build(f"Sgrp({r})")
        dg, z = derived_subgroup(g), center(g)
        assert dg.order == 2 ** r
        assert set(dg.members) <= set(z.members)


def test_frobenius_2_3():
    assert psi(build("Frob2(1)")) == 31
    g = build("Frob2(2)")
    assert (g.order, psi(g)) == (48, 127)
    # x^2 + x + 1 has no root mod 2: no non-zero vector is fixed
    assert all((x * x + x + 1) % 2 for x in (0, 1))


def test_frobenius_3_2():
    s3 = build("Frob3(1)")
    assert is_isomorphic(s3, build("Sym(3)")) and psi(s3) == 13
    g2 = build("Frob3(2)")
    assert g2.order == 18 and is_isomorphic(g2, build("GD(C3xC3)"))
    assert avg_order(g2) == Fraction(43, 18)
    g3 = build("Frob3(3)")
    assert psi(g3) == 133 and avg_order(g3) == Fraction(133, 54)


def test_point_values():
    assert avg_order(build("D12")) == avg_order(build("C4")) == Fraction(11, 4)
    assert avg_order(build("C6")) == Fraction(7, 2)
    assert avg_order(build("CProd(D8,C4)")) == Fraction(47, 16)
    assert avg_order(build("D8xD8")) == Fraction(183, 64)
    assert avg_order(build("C2xD12")) == Fraction(73, 24)


def test_constructors_match_permutation_oracle():
    # S4 and D8 from raw permutation closure
    s4 = oracles.perm_closure([oracles.cycle(4, 0, 1), oracles.cycle(4, 0, 1, 2, 3)], 4)
    assert oracles.psi(oracles.perm_table(s4)) == psi(build("Sym(4)"))
    assert sorted(oracles.spectrum(oracles.perm_table(s4)).items()) == [(1, 1), (2, 9), (3, 8), (4, 6)]
    d8 = oracles.perm_closure([oracles.cycle(4, 0, 1, 2, 3), oracles.cycle(4, 1, 3)], 4)
    assert len(d8) == 8
    assert oracles.isomorphic(oracles.perm_table(d8), as_cayley(build("D8")).table.tolist())


# -- isomorphism and canonical forms --------------------------------------------

def test_iso_examples():
    assert is_isomorphic(build("H(1)"), build("D8"))
    assert not is_isomorphic(build("D8"), _q8())
    g = build("Sym(4)")
    assert is_isomorphic(g, g)


def _q8():
    # quaternion group from the oracle census: the order-8 group with a single involution
    for t in oracles.groups_of_order(8):
        if oracles.spectrum(t).get(2) == 1 and 8 not in oracles.spectrum(t):
            return CayleyGroup(t)
    raise AssertionError("no Q8 in the oracle census")


def test_d8_q8_spectra_differ():
    assert n2(build("D8")) == 5 and n2(_q8()) == 1
    assert canonical_form(build("D8")) != canonical_form(_q8())


def test_canonical_examples():
    c4a = build("C4")
    c4b = CayleyGroup(oracles.cyclic_table(4))
    assert canonical_form(c4a) == canonical_form(c4b)
    assert canonical_form(build("H(2)")) != canonical_form(build("Sgrp(2)"))
    assert canonical_form(build("GD(C4xC4)")) != canonical_form(build("H(2)"))


@st.composite
def table_and_relabel(draw, max_order=16):
    n = draw(st.integers(min_value=1, max_value=max_order))
    t = draw(st.sampled_from(oracles.groups_of_order(n)))
    perm = [0] + list(draw(st.permutations(list(range(1, n)))))
    return t, perm


@given(table_and_relabel())
def test_canonical_form_relabel_invariant(tp):
    t, perm = tp
    g = CayleyGroup(t)
    h = relabel(g, perm)
    assert canonical_form(g) == canonical_form(h)
    phi = find_isomorphism(g, h)
    assert phi is not None and is_homomorphism(g, h, phi)


@given(st.integers(1, 16), st.data())
def test_iso_agrees_with_oracle(n, data):
    tables = oracles.groups_of_order(n)
    ta = data.draw(st.sampled_from(tables))
    tb = data.draw(st.sampled_from(tables))
    same = ta is tb
    assert is_isomorphic(CayleyGroup(ta), CayleyGroup(tb)) == same
    assert (canonical_form(CayleyGroup(ta)) == canonical_form(CayleyGroup(tb))) == same


def test_cross_backend_iso():
    # a permutation group against a table of the same group
    assert is_isomorphic(cyclic(6), direct_product(build("C2"), build("C3")))
    assert is_isomorphic(build("D12"), build("Sym(3) x C2"))
