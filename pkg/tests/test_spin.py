import pytest

from cliffpair.clifford import cliff_mul, commutator, alpha, group_act, restrict_to_space, space_of
from cliffpair.exact import ONE, frac
from cliffpair.multivec import Multivector, UsageError, lie_derivative
from cliffpair.oracle import oracle_invariants, oracle_invariants_graded
from cliffpair.spin import (Flavor, alpha_image_basis, casimir_image, check_projection_algebra,
                            in_alpha_image, invariants_cl, invariants_wedge_graded,
                            isotypic_idempotents, minimal_polynomial, symbol_filtration_dims,
                            zero_weight_monomials)

from conftest import PRIMARY_IDS, SMALL_IDS, get_pair


@pytest.mark.parametrize("pid,dim,graded", [
    ("sl3-so3", 2, [1, 0, 0, 0, 0, 1]),
    ("sl4-sp4", 2, [1, 0, 0, 0, 0, 1]),
    ("sl5-so5", 4, [1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1]),
])
def test_invariant_dimensions(pid, dim, graded):
    pair = get_pair(pid)
    b = invariants_cl(pair, Flavor.CL_K_LIE)
    assert b.dim == dim == 2 ** len(pair.aIdx)
    assert b.gradedDims == graded
    assert invariants_cl(pair, Flavor.CL_K_GROUP).dim == dim


@pytest.mark.parametrize("pid", SMALL_IDS)
def test_dense_oracle_agrees(pid):
    pair = get_pair(pid)
    assert oracle_invariants(pair) == invariants_cl(pair).dim
    assert oracle_invariants_graded(pair) == invariants_wedge_graded(pair).gradedDims


def test_oracle_size_guard():
    from cliffpair.oracle import OracleTooLarge
    with pytest.raises(OracleTooLarge):
        oracle_invariants(get_pair("sl5-so5"))


@pytest.mark.parametrize("pid", PRIMARY_IDS)
def test_invariants_are_killed_by_both_actions(pid):
    pair = get_pair(pid)
    for x in invariants_cl(pair).elements:
        for i in pair.kIdx[:4]:
            assert lie_derivative({i: ONE}, x).is_zero()
            assert commutator(alpha(pair, {i: ONE}), x).is_zero()


@pytest.mark.parametrize("pid", PRIMARY_IDS)
def test_symbol_filtration_matches_exterior_invariants(pid):
    pair = get_pair(pid)
    els = invariants_cl(pair).elements
    assert symbol_filtration_dims(els) == invariants_wedge_graded(pair).gradedDims


def test_zero_weight_monomials_sl3():
    pair = get_pair("sl3-so3")
    zs = zero_weight_monomials(pair)
    assert 0 in zs and (1 << 5) - 1 in zs
    assert len(zs) == len(set(zs))


def test_desk_bound():
    with pytest.raises(UsageError):
        invariants_cl(get_pair("sl3-so3"), bound=3)


@pytest.mark.parametrize("pid,value", [("sl3-so3", "15/8"), ("sl4-sp4", "5/2"), ("sl5-so5", "35/4")])
def test_primary_projection_algebra_is_trivial(pid, value):
    pair = get_pair(pid)
    pa = isotypic_idempotents(pair)
    sp = space_of(pair, "p")
    assert pa.idempotents == [Multivector.scalar(sp)]
    assert pa.eigenvalues == [["casimir=%s" % value]]
    assert check_projection_algebra(pa)
    c = casimir_image(pair)
    # the Casimir acts by one scalar on the single k-type
    assert c == Multivector.scalar(sp, frac(*map(int, value.split("/"))))
    assert len(minimal_polynomial(c, Multivector.scalar(sp))) == 2


@pytest.mark.parametrize("pid", SMALL_IDS)
def test_alpha_image_is_even_subalgebra_for_small_pairs(pid):
    pair = get_pair(pid)
    # dim p = 5 is odd and S is irreducible over k, so alpha(U(k)) = Cl^even
    assert len(alpha_image_basis(pair)) == 16
    sp = space_of(pair, "p")
    odd = Multivector.basis(sp, 0)
    assert not in_alpha_image(pair, odd, "span")
    assert not in_alpha_image(pair, odd, "commutant")


@pytest.mark.stretch
def test_even_orthogonal_pair_invariants():
    pair = get_pair("sl6-o6")
    lie = invariants_cl(pair, Flavor.CL_K_LIE)
    grp = invariants_cl(pair, Flavor.CL_K_GROUP)
    assert lie.dim == 8
    assert grp.dim == 4
    pa = isotypic_idempotents(pair)
    assert len(pa.idempotents) == 2
    assert check_projection_algebra(pa)
    # the component group swaps the two idempotents
    m = restrict_to_space(pair, pair.groupGenerators[0], "p")
    p1, p2 = pa.idempotents
    assert group_act(m, p1) == p2
