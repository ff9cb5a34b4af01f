import itertools

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from cliffpair.clifford import cartan_three_tensor, space_of
from cliffpair.exact import ONE, ZERO, frac
from cliffpair.invariants import (QuotientMode, SymmetricTensor, Target, coinvariant_quotient,
                                  is_k_invariant, k_generator, power_sum, primitives_p,
                                  relative_transgression, restrict_to_k, restrict_to_k_local,
                                  splitting, theta_action, transgress, transgression_constant)
from cliffpair.liealg import build_sl
from cliffpair.multivec import Multivector, UsageError
from cliffpair.oracle import (naive_Btilde, naive_power_sum, oracle_coinvariant_graded,
                              oracle_transgression_invariance)

from conftest import PRIMARY_IDS, get_pair
from strategies import elements

SL2, SL3 = build_sl(2), build_sl(3)


def test_sl2_quadratic_power_sum():
    lab = {l: i for i, l in enumerate(SL2.labels)}
    e, f, h = lab["E1,2"], lab["E2,1"], lab["H1"]
    p2 = power_sum(SL2, 2)
    # symmetrized trace tensor: tr(ef) averaged with tr(fe), and tr(hh)
    assert p2.terms == {tuple(sorted((e, f))): ONE, (h, h): frac(2)}
    assert p2.poly() == {tuple(sorted((e, f))): frac(2), (h, h): frac(2)}


def test_power_sum_degree_checked():
    with pytest.raises(UsageError):
        power_sum(SL3, 1)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 4), elements(range(8)))
def test_power_sum_matches_dense_evaluation(k, x):
    assert power_sum(SL3, k).evaluate(x).to_fraction() == naive_power_sum(SL3, k, x)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_power_sums_invariant(k):
    assert power_sum(SL3, k).is_invariant()


@pytest.mark.parametrize("pid", PRIMARY_IDS)
def test_theta_parity(pid):
    pair = get_pair(pid)
    top = 5 if pid != "sl5-so5" else 4
    for k in range(2, top):
        p = power_sum(pair.g, k)
        assert theta_action(pair, p) == p * frac((-1) ** k)


@pytest.mark.parametrize("pid", PRIMARY_IDS)
def test_odd_power_sums_vanish_on_k(pid):
    pair = get_pair(pid)
    assert restrict_to_k(pair, power_sum(pair.g, 3)).is_zero()
    assert not restrict_to_k(pair, power_sum(pair.g, 2)).is_zero()


@pytest.mark.parametrize("pid", PRIMARY_IDS)
def test_splitting_is_a_section(pid):
    pair = get_pair(pid)
    for j in range(1, len(pair.tIdx) + 1):
        assert restrict_to_k_local(pair, splitting(pair, j)) == k_generator(pair, j)


def test_transgression_constant():
    assert transgression_constant(1) == frac(1, 6)
    assert transgression_constant(2) == frac(4, 120)


def test_transgress_quadratic_on_sl2():
    t = transgress(power_sum(SL2, 2))
    lab = {l: i for i, l in enumerate(SL2.labels)}
    sp = t.space
    # value frozen from the defining sum; equals twice the Cartan 3-tensor
    assert t == Multivector.basis(sp, lab["E1,2"], lab["E2,1"], lab["H1"])
    assert t == cartan_three_tensor(SL2).scale(2)
    assert oracle_transgression_invariance(power_sum(SL2, 2), t)


def test_transgress_cubic_on_sl3():
    p3 = power_sum(SL3, 3)
    t = transgress(p3)
    assert t.degrees() == [5]
    assert oracle_transgression_invariance(p3, t)
    assert transgress(p3, Target.CLIFFORD) == t


def test_transgress_rejects_non_invariant():
    lab = {l: i for i, l in enumerate(SL3.labels)}
    bad = SymmetricTensor(SL3, 2, {(lab["E1,2"], lab["E1,2"]): ONE})
    with pytest.raises(UsageError):
        transgress(bad)


@pytest.mark.parametrize("g,a,b", [(SL2, 2, 2), (SL3, 2, 2), (SL3, 2, 3)])
def test_transgression_kills_products(g, a, b):
    pa, pb = power_sum(g, a), power_sum(g, b)
    t = transgress(pa * pb)
    assert t.is_zero()
    assert oracle_transgression_invariance([pa, pb], t)


@pytest.mark.parametrize("pid,degrees,sizes", [
    ("sl3-so3", [5], [1]),
    ("sl4-sp4", [5], [1]),
    ("sl5-so5", [5, 9], [56, 66]),
])
def test_primitives(pid, degrees, sizes):
    pair = get_pair(pid)
    prims = primitives_p(pair)
    assert [p.degree for p in prims] == degrees
    assert len(prims) == len(pair.aIdx)
    assert [len(p.element.terms) for p in prims] == sizes
    for p in prims:
        assert p.element.degrees() == [p.degree]
        assert is_k_invariant(pair, p.element, group=True)


@pytest.mark.parametrize("pid", ["sl3-so3", "sl4-sp4"])
def test_primitive_is_multiple_of_top_form(pid):
    pair = get_pair(pid)
    (p,) = primitives_p(pair)
    top = (1 << len(pair.pIdx)) - 1
    assert list(p.element.terms) == [top]
    # so its self-pairing is c^2 det(Gram of p)
    c = p.element.terms[top]
    G = sympy.Matrix([[sympy.Rational(str(x)) for x in row] for row in space_of(pair, "p").gram])
    assert naive_Btilde(p.element, p.element) == (c * c).to_fraction() * G.det()


def test_relative_transgression_is_restricted_absolute():
    pair = get_pair("sl3-so3")
    p3 = power_sum(pair.g, 3)
    full = transgress(p3)
    kmask = sum(1 << i for i in pair.kIdx)
    kept = {m: c for m, c in full.terms.items() if not m & kmask}
    rel = relative_transgression(pair, p3)
    assert len(kept) == len(rel.terms)
    assert set(c * -16 for c in kept.values()) == set(rel.terms.values())


@pytest.mark.parametrize("pid", PRIMARY_IDS)
def test_coinvariant_quotients(pid):
    pair = get_pair(pid)
    at = coinvariant_quotient(pair, QuotientMode.AT_RHO)
    gr = coinvariant_quotient(pair, QuotientMode.GRADED)
    assert at.dimension == 1
    assert gr.dimension == at.dimension == sum(gr.graded_dims)
    assert gr.graded_dims == oracle_coinvariant_graded(pair)


def test_coinvariant_quotient_even_orthogonal():
    pair = get_pair("sl6-o6")
    at = coinvariant_quotient(pair, QuotientMode.AT_RHO)
    gr = coinvariant_quotient(pair, QuotientMode.GRADED)
    assert at.dimension == 2
    assert gr.graded_dims == [1, 0, 0, 1] == oracle_coinvariant_graded(pair)
    assert at.to_dict()["dimension"] == 2
