import pytest
from hypothesis import given, settings, strategies as st

from cliffpair.clifford import g_space, space_of
from cliffpair.exact import ONE, ZERO, frac
from cliffpair.liealg import build_sl
from cliffpair.multivec import (Multivector, QuadraticSpace, SpaceMismatch, UsageError, apply_linear,
                                contract, contract_ext, form_B, form_Btilde, involution,
                                lie_derivative, transpose, wedge, wedge_all)

from conftest import get_pair
from strategies import elements, homogeneous, multivectors, vectors

P = space_of(get_pair("sl3-so3"), "p")
KIDX = get_pair("sl3-so3").kIdx


@given(multivectors(P), multivectors(P), multivectors(P))
def test_wedge_associative(a, b, c):
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@given(st.integers(0, 5), st.integers(0, 5), st.data())
def test_graded_commutativity(i, j, data):
    a = data.draw(homogeneous(P, i))
    b = data.draw(homogeneous(P, j))
    assert wedge(a, b) == wedge(b, a).scale((-1) ** (i * j))


@given(vectors(P), st.integers(0, 5), multivectors(P), st.data())
def test_contraction_is_odd_derivation(v, k, b, data):
    a = data.draw(homogeneous(P, k))
    lhs = contract(v, wedge(a, b))
    rhs = wedge(contract(v, a), b) + wedge(a, contract(v, b)).scale((-1) ** k)
    assert lhs == rhs


@given(vectors(P), multivectors(P))
def test_contraction_squares_to_zero(v, a):
    assert contract(v, contract(v, a)).is_zero()


@given(vectors(P), vectors(P))
def test_contraction_of_vector_is_form(u, v):
    assert contract(u, Multivector.vector(P, v)) == Multivector.scalar(P, P.form(u, v))


@given(vectors(P), vectors(P), multivectors(P))
def test_contract_ext_composes(x, y, b):
    xy = wedge(Multivector.vector(P, x), Multivector.vector(P, y))
    assert contract_ext(xy, b) == contract(x, contract(y, b))


@given(st.integers(0, 5), st.data())
def test_Btilde_symmetric(k, data):
    a = data.draw(homogeneous(P, k))
    b = data.draw(homogeneous(P, k))
    assert form_Btilde(a, b) == form_Btilde(b, a)
    assert form_B(a, b) == form_B(b, a)


def test_Btilde_on_two_vectors_is_minus_determinant():
    e = [Multivector.basis(P, i) for i in range(P.dim)]
    a = wedge(e[0], e[3])
    g = P.gram
    det = g[0][0] * g[3][3] - g[0][3] * g[3][0]
    assert form_Btilde(a, a) == -det
    assert form_B(a, a) == det


@given(multivectors(P), multivectors(P))
def test_transpose_reverses(a, b):
    assert transpose(wedge(a, b)) == wedge(transpose(b), transpose(a))
    assert transpose(transpose(a)) == a
    assert involution(wedge(a, b)) == wedge(involution(a), involution(b))


@settings(max_examples=40)
@given(elements(KIDX), multivectors(P), multivectors(P))
def test_lie_derivative_is_even_derivation(x, a, b):
    lhs = lie_derivative(x, wedge(a, b))
    assert lhs == wedge(lie_derivative(x, a), b) + wedge(a, lie_derivative(x, b))


@settings(max_examples=30)
@given(elements(KIDX), elements(KIDX), multivectors(P))
def test_lie_derivative_represents_bracket(x, y, a):
    g = get_pair("sl3-so3").g
    lhs = lie_derivative(x, lie_derivative(y, a)) - lie_derivative(y, lie_derivative(x, a))
    assert lhs == lie_derivative(g.bracket_vec(x, y), a)


@given(st.lists(st.lists(st.integers(-2, 2), min_size=5, max_size=5), min_size=5, max_size=5),
       multivectors(P), multivectors(P))
def test_linear_extension_is_algebra_map(m, a, b):
    cols = [{i: frac(m[i][j]) for i in range(5) if m[i][j]} for j in range(5)]
    f = lambda z: apply_linear(cols, z, derivation=False)
    assert f(wedge(a, b)) == wedge(f(a), f(b))


def test_adjoint_rejects_non_preserving_element():
    pair = get_pair("sl3-so3")
    with pytest.raises(UsageError):
        P.adjoint({pair.pIdx[0]: ONE})


def test_space_mismatch():
    Q = g_space(build_sl(2))
    with pytest.raises(SpaceMismatch):
        Multivector.scalar(P) + Multivector.scalar(Q)
    with pytest.raises(SpaceMismatch):
        wedge(Multivector.scalar(P), Multivector.scalar(Q))


def test_wedge_all_and_basis():
    e = [Multivector.basis(P, i) for i in range(3)]
    assert wedge_all(e, P) == Multivector.basis(P, 0, 1, 2)
    assert Multivector.basis(P, 1, 0) == -Multivector.basis(P, 0, 1)
    assert Multivector.basis(P, 1, 1).is_zero()


@given(multivectors(P))
def test_list_roundtrip(a):
    assert Multivector.from_list(P, a.to_list()) == a


def test_rendering():
    a = Multivector(P, {0b11: frac(1, 2)})
    assert "1/2" in str(a)
    assert str(Multivector(P)) == "0"
