import sympy
from hypothesis import given, settings, strategies as st

from cliffpair.exact import ONE, ZERO, frac
from cliffpair.linalg import EchelonBasis, determinant, inverse, matmul, identity, nullspace, rank

entries = st.integers(-3, 3)


def _matrix(n, m):
    return st.lists(st.lists(entries, min_size=m, max_size=m), min_size=n, max_size=n)


def _as_rows(a):
    return [{j: frac(x) for j, x in enumerate(row) if x} for row in a]


@given(_matrix(4, 5))
def test_rank_matches_sympy(a):
    assert rank(_as_rows(a)) == sympy.Matrix(a).rank()


@given(_matrix(3, 6))
def test_nullspace_is_kernel_of_full_dimension(a):
    rows = _as_rows(a)
    ker = nullspace(rows, list(range(6)))
    assert len(ker) == 6 - sympy.Matrix(a).rank()
    for v in ker:
        for r in rows:
            assert sum((c * v.get(j, ZERO) for j, c in r.items()), ZERO) == ZERO


@given(_matrix(4, 4))
def test_determinant_and_inverse(a):
    m = [[frac(x) for x in row] for row in a]
    d = determinant(m)
    assert d == frac(int(sympy.Matrix(a).det()))
    if d:
        assert matmul(m, inverse(m)) == identity(4)


@settings(max_examples=50)
@given(st.lists(st.lists(entries, min_size=5, max_size=5), min_size=1, max_size=6))
def test_echelon_coordinates_reconstruct(vs):
    vecs = _as_rows(vs)
    eb = EchelonBasis()
    for v in vecs:
        eb.add(v)
    target = {}
    for i, v in enumerate(vecs):
        for j, c in v.items():
            target[j] = target.get(j, ZERO) + frac(i + 1) * c
    target = {k: c for k, c in target.items() if c}
    coords = eb.coordinates(target)
    assert coords is not None
    rebuilt = {}
    for i, c in coords.items():
        for j, x in vecs[i].items():
            rebuilt[j] = rebuilt.get(j, ZERO) + c * x
    assert {k: c for k, c in rebuilt.items() if c} == target


def test_decompose_returns_residual():
    eb = EchelonBasis()
    eb.add({0: ONE, 1: ONE})
    coords, res = eb.decompose({0: ONE, 2: ONE})
    assert res == {1: -ONE, 2: ONE}
    assert eb.coordinates({0: ONE, 2: ONE}) is None
