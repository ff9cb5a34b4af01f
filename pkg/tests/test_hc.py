import random

import pytest
from hypothesis import given, settings, strategies as st

from cliffpair.clifford import alpha_word, cliff_mul, space_of
from cliffpair.exact import ONE, ZERO, frac
from cliffpair.hc import (build_hc, contraction_derivation_check, hc_alpha_check, hc_apply,
                          hc_apply_full, hc_closed_form, hilbert_product, primitive_gram,
                          projector, verify_main_theorem)
from cliffpair.linalg import determinant
from cliffpair.multivec import Multivector, UsageError
from cliffpair.oracle import naive_Btilde, oracle_hc
from cliffpair.invariants import primitives_p
from cliffpair.spin import Flavor, invariants_cl, isotypic_idempotents, zero_weight_monomials

from conftest import PRIMARY_IDS, SMALL_IDS, get_pair


def _tuples(y):
    return {tuple(i for i in range(y.space.dim) if m >> i & 1): c.to_fraction()
            for m, c in y.terms.items()}


@pytest.mark.parametrize("pid", PRIMARY_IDS)
def test_projector(pid):
    pair = get_pair(pid)
    hc = build_hc(pair)
    P = hc.Pw
    assert cliff_mul(P, P) == P
    sp = space_of(pair, "p")
    ps = pair.posSystems[0]
    assert len(ps.plus) == (len(pair.pIdx) - len(pair.aIdx)) // 2
    for i in ps.plus:
        assert cliff_mul(Multivector.basis(sp, pair.p_local(i)), P).is_zero()
    for i in ps.minus:
        assert cliff_mul(P, Multivector.basis(sp, pair.p_local(i))).is_zero()
    assert len(hc.conjugatedBasis) == 2 ** len(pair.aIdx)
    assert projector(pair) == P


def test_unknown_positive_system():
    with pytest.raises(UsageError):
        build_hc(get_pair("sl3-so3"), 3)


@pytest.mark.parametrize("pid", PRIMARY_IDS)
def test_hc_of_one_and_cartan(pid):
    pair = get_pair(pid)
    hc = build_hc(pair)
    one = Multivector.scalar(space_of(pair, "p"))
    assert hc_apply(hc, one) == Multivector.scalar(space_of(pair, "a"))
    ok, got, want = hc_alpha_check(pair)
    assert ok, (got, want)


@pytest.mark.parametrize("pid", PRIMARY_IDS)
def test_hc_multiplicative_and_bijective_on_invariants(pid):
    pair = get_pair(pid)
    hc = build_hc(pair)
    inv = invariants_cl(pair, Flavor.CL_K_GROUP).elements
    imgs = [hc_apply(hc, x) for x in inv]
    for x, hx in zip(inv, imgs):
        for y, hy in zip(inv, imgs):
            assert hc_apply(hc, cliff_mul(x, y)) == cliff_mul(hx, hy)
    from cliffpair.hc import span_rank
    assert span_rank(imgs) == 2 ** len(pair.aIdx)


@pytest.mark.parametrize("pid", PRIMARY_IDS)
def test_hc_of_alpha_words_is_scalar(pid):
    pair = get_pair(pid)
    hc = build_hc(pair)
    rng = random.Random(7)
    for _ in range(12):
        n = rng.randint(1, 4)
        word = [{rng.choice(pair.kIdx): ONE} for _ in range(n)]
        y = hc_apply(hc, alpha_word(pair, word))
        assert y.degrees() in ([], [0])


@pytest.mark.parametrize("pid", PRIMARY_IDS)
def test_contraction_is_half_commutator_on_invariants(pid):
    assert contraction_derivation_check(get_pair(pid))


@pytest.mark.parametrize("pid", SMALL_IDS)
def test_pbw_oracle_exhaustive_on_weight_zero_basis(pid):
    # zero-weight monomials span Cl(p)^t; compare all three realizations
    pair = get_pair(pid)
    hc = build_hc(pair)
    sp = space_of(pair, "p")
    for m in zero_weight_monomials(pair):
        x = Multivector(sp, {m: ONE})
        y, ok = hc_apply_full(hc, x)
        assert ok
        assert _tuples(y) == oracle_hc(pair, 0, x)
        assert hc_closed_form(pair, x) == y


def test_pbw_oracle_on_dual_pair_product():
    pair = get_pair("sl3-so3")
    sp = space_of(pair, "p")
    ps = pair.posSystems[0]
    e = Multivector.basis(sp, pair.p_local(ps.plus[0]))
    f = Multivector.basis(sp, pair.p_local(ps.minus[0]))
    b = pair.g.gram[ps.plus[0]][ps.minus[0]]
    # ef = 2B(e,f) - fe and fe is killed
    assert oracle_hc(pair, 0, cliff_mul(e, f)) == {(): (2 * b).to_fraction()}
    assert oracle_hc(pair, 0, cliff_mul(f, e)) == {}
    assert oracle_hc(pair, 0, Multivector.scalar(sp)) == {(): 1}


@pytest.mark.parametrize("pid", PRIMARY_IDS)
def test_closed_form_agrees_on_invariants(pid):
    pair = get_pair(pid)
    hc = build_hc(pair)
    for x in invariants_cl(pair).elements:
        assert hc_closed_form(pair, x) == hc_apply(hc, x)


@pytest.mark.parametrize("pid,gram", [
    ("sl3-so3", [["96/1"]]),
    ("sl4-sp4", [["576/1"]]),
    ("sl5-so5", [["2016/1", "0/1"], ["0/1", "368640/7"]]),
])
def test_primitive_gram(pid, gram):
    pair = get_pair(pid)
    G = primitive_gram(pair)
    assert [[str(x) for x in row] for row in G] == gram
    prims = [p.element for p in primitives_p(pair)]
    assert [[naive_Btilde(a, b) for b in prims] for a in prims] == [[x.to_fraction() for x in r] for r in G]
    assert determinant(G) != ZERO


def test_hilbert_product():
    assert hilbert_product([5], [1]) == [1, 0, 0, 0, 0, 1]
    assert hilbert_product([5, 9], [1]) == [1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1]
    assert hilbert_product([5], [1, 0, 0, 1]) == [1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1]


@pytest.mark.parametrize("pid", SMALL_IDS)
def test_main_theorem_small(pid):
    pair = get_pair(pid)
    rep = verify_main_theorem(pair)
    assert rep.passed, rep.to_dict()
    assert rep.to_dict() == verify_main_theorem(pair, threads=3).to_dict()
    assert set(rep.to_dict(timings=True)["timings"]) == {"a", "b", "c", "d"}


def test_failed_part_is_reported_not_raised(monkeypatch):
    import cliffpair.hc as hcmod
    pair = get_pair("sl3-so3")

    def boom(p):
        raise RuntimeError("broken")
    monkeypatch.setattr(hcmod, "check_part_c", boom)
    rep = verify_main_theorem(pair)
    assert not rep.passed
    assert not rep.parts["c"].passed
    assert "broken" in rep.parts["c"].witnesses["error"]


@pytest.mark.stretch
def test_even_orthogonal_projections():
    pair = get_pair("sl6-o6")
    inv = invariants_cl(pair, Flavor.CL_K_GROUP).elements
    h0, h1 = build_hc(pair, 0), build_hc(pair, 1)
    for x in inv:
        assert hc_apply(h0, x) == hc_apply(h1, x)
    pa = isotypic_idempotents(pair)
    a = space_of(pair, "a")
    rows = [[hc_apply(h, e) for e in pa.idempotents] for h in (h0, h1)]
    for r in rows:
        assert sorted(y == Multivector.scalar(a) for y in r) == [False, True]
        assert all(y.is_zero() or y == Multivector.scalar(a) for y in r)
    assert rows[0][0] != rows[1][0]
    for w in (0, 1):
        assert hc_alpha_check(pair, w)[0]
