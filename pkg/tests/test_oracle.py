from fractions import Fraction

import pytest

from cliffpair.oracle import DenseMatrix, _det, complete_intersection_series


def test_dense_rank():
    m = DenseMatrix(3, 3, [[Fraction(1), Fraction(2), Fraction(3)],
                           [Fraction(2), Fraction(4), Fraction(6)],
                           [Fraction(0), Fraction(1), Fraction(1)]])
    assert m.rank() == 2
    assert m.nullity() == 1
    assert DenseMatrix(2, 4).rank() == 0


def test_det():
    assert _det([[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]) == -1
    assert _det([[Fraction(2), Fraction(1)], [Fraction(4), Fraction(2)]]) == 0
    assert _det([]) == 1


def test_complete_intersection_series():
    # C[x]/(x^2): 1 + t
    assert complete_intersection_series([1], [2]) == [1, 1]
    # W(A_1) coinvariants in one variable of degree 2 modulo itself
    assert complete_intersection_series([2], [2]) == [1]
    # C[x, y] / (x^2, y^3) with deg 1 generators
    assert complete_intersection_series([1, 1], [2, 3]) == [1, 2, 2, 1]
    with pytest.raises(ValueError):
        complete_intersection_series([1, 1], [2])
