import json

import pytest

from cliffpair.exact import ONE, ZERO, frac
from cliffpair.liealg import (CatalogError, LieAlgebra, SymmetricPair, act_matrix, build_pair,
                              build_so, build_sp, build_sl, half_weight_sum, pair_from_id)
from cliffpair.linalg import matmul, identity

from conftest import get_pair


def test_sl2_conventions():
    g = build_sl(2)
    lab = {l: i for i, l in enumerate(g.labels)}
    e, f, h = lab["E1,2"], lab["E2,1"], lab["H1"]
    assert g.dim == 3
    assert g.bracket(e, f) == {h: ONE}
    assert g.gram[e][f] == ONE
    assert g.gram[h][h] == frac(2)


@pytest.mark.parametrize("builder,n,dim", [(build_sl, 3, 8), (build_sl, 4, 15), (build_so, 5, 10),
                                           (build_so, 6, 15), (build_sp, 4, 10)])
def test_builders(builder, n, dim):
    g = builder(n)
    assert g.dim == dim
    assert g.check_antisymmetry()
    assert g.check_jacobi()
    assert g.check_form()


def test_too_small():
    with pytest.raises(CatalogError):
        build_sl(1)


@pytest.mark.parametrize("pid,dims", [
    ("sl3-so3", dict(g=8, k=3, p=5, a=1, t=1)),
    ("sl4-sp4", dict(g=15, k=10, p=5, a=1, t=2)),
    ("sl5-so5", dict(g=24, k=10, p=14, a=2, t=2)),
    ("sl6-o6", dict(g=35, k=15, p=20, a=2, t=3)),
    ("sl6-sp6", dict(g=35, k=21, p=14, a=2, t=3)),
])
def test_pair_dimensions(pid, dims):
    pair = get_pair(pid)
    assert pair.dims == dims
    assert dims["a"] == (pair.g.n - 1) - dims["t"]


def test_excluded_pair():
    with pytest.raises(CatalogError, match="out of catalog"):
        pair_from_id("e6-f4")
    with pytest.raises(CatalogError):
        build_pair("EIV", 27)
    with pytest.raises(CatalogError):
        pair_from_id("sl9-so9")


def _check_pair(pair: SymmetricPair):
    g = pair.g
    th = pair.theta
    assert matmul(th, th) == identity(g.dim)
    for i in range(g.dim):
        for j in range(g.dim):
            x = act_matrix(th, g.bracket_vec({i: ONE}, {j: ONE}))
            y = g.bracket_vec(act_matrix(th, {i: ONE}), act_matrix(th, {j: ONE}))
            assert x == y
            assert g.form(act_matrix(th, {i: ONE}), act_matrix(th, {j: ONE})) == g.gram[i][j]
    for i in pair.kIdx:
        assert th[i][i] == ONE
        for j in pair.pIdx:
            assert g.gram[i][j] == ZERO
    for i in pair.pIdx:
        assert th[i][i] == -ONE
    h = pair.tIdx + pair.aIdx
    for i in h:
        for j in h:
            assert not g.bracket(i, j)
    # ad(t) diagonal outside h, with the stored weights
    for i in range(g.dim):
        if i in h:
            continue
        for l, t in enumerate(pair.tIdx):
            assert g.bracket_vec({t: ONE}, {i: ONE}) == ({i: pair.tWeights[i][l]} if pair.tWeights[i][l] else {})
    for ps in pair.posSystems:
        for A in (ps.plus, ps.minus):
            for i in A:
                for j in A:
                    assert g.gram[i][j] == ZERO
        for a, i in enumerate(ps.plus):
            for b, j in enumerate(ps.minus):
                assert bool(g.gram[i][j]) == (a == b)
        assert sorted(ps.plus + ps.a + ps.minus) == sorted(pair.pIdx)
    for m in pair.groupGenerators:
        assert matmul(m, th) == matmul(th, m)


@pytest.mark.parametrize("pid", ["sl3-so3", "sl4-sp4", "sl5-so5", "sl6-o6"])
def test_pair_structure(pid):
    _check_pair(get_pair(pid))


def test_group_generator_of_even_orthogonal_pair():
    pair = get_pair("sl6-o6")
    assert len(pair.groupGenerators) == 1
    assert len(pair.posSystems) == 2
    assert pair.group_name == "O(6)"


def _eigen_half_sum(pair, w):
    out = []
    for t in pair.tIdx:
        s = ZERO
        for i in pair.posSystems[w].plus:
            v = pair.g.bracket_vec({t: ONE}, {i: ONE})
            s += v.get(i, ZERO)
        out.append(s / 2)
    return tuple(out)


@pytest.mark.parametrize("pid,expected", [
    ("sl3-so3", ("3/2",)),
    ("sl4-sp4", ("1/1", "0/1")),
    ("sl5-so5", ("5/2", "3/2")),
])
def test_half_weight_sum(pid, expected):
    pair = get_pair(pid)
    got = half_weight_sum(pair)
    assert tuple(str(x) for x in got) == expected
    assert got == _eigen_half_sum(pair, 0)


def test_half_weight_sum_both_systems_of_even_orthogonal_pair():
    pair = get_pair("sl6-o6")
    a, b = half_weight_sum(pair, 0), half_weight_sum(pair, 1)
    assert a != b
    assert a[:-1] == b[:-1] and a[-1] == -b[-1]
    assert b == _eigen_half_sum(pair, 1)


def test_serialization_roundtrip():
    g = build_so(5)
    g2 = LieAlgebra.from_json(g.to_json())
    assert g.same_data(g2)
    pair = get_pair("sl4-sp4")
    data = json.loads(pair.to_json())
    assert data["id"] == "sl4-sp4"
    p2 = SymmetricPair.from_json(pair.to_json())
    assert p2.kIdx == pair.kIdx and p2.pIdx == pair.pIdx and p2.theta == pair.theta
    assert p2.g.same_data(pair.g)
    assert half_weight_sum(p2) == half_weight_sum(pair)
