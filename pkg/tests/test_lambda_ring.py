import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dehnforge.lambda_ring import (DenominatorError, LambdaElement, LambdaMatrix, SpecializationError,
                                   common_denominator, dumps, from_json, laurent_mul, loads, order, q,
                                   specialize, to_json, to_single_variable)

exponents = st.fractions(min_value=-3, max_value=3, max_denominator=6)
elements = st.dictionaries(exponents, st.integers(-50, 50), max_size=5).map(LambdaElement)
nonzero = elements.filter(lambda a: not a.is_zero())


def test_zero_is_empty():
    assert LambdaElement({Fraction(1, 2): 0}).terms == {}
    assert (q(1) - q(1)).is_zero()
    assert order(0) == math.inf


def test_small_product():
    a = q(Fraction(1, 2)) + 3
    assert a * a == 9 + 6 * q(Fraction(1, 2)) + q(1)
    assert order(a) == 0


def test_specialize():
    assert specialize(q(Fraction(1, 3), 4) + 2, 1) == 6
    assert specialize(q(2) - q(-1), 2) == Fraction(4) - Fraction(1, 2)
    with pytest.raises(SpecializationError):
        specialize(q(Fraction(1, 2)), 2)
    with pytest.raises(SpecializationError):
        specialize(q(-1), 0)


def test_single_variable():
    assert to_single_variable(q(Fraction(1, 2)) + q(1), 2) == {1: 1, 2: 1}
    assert to_single_variable(LambdaElement(), 5) == {}
    with pytest.raises(DenominatorError):
        to_single_variable(q(Fraction(1, 3)), 2)
    with pytest.raises(DenominatorError):
        to_single_variable(q(1), 0)


def test_json_records():
    a = q(Fraction(-2, 3), 10 ** 30) - 7
    assert to_json(a) == [{"num": -2, "den": 3, "coeff": str(10 ** 30)}, {"num": 0, "den": 1, "coeff": "-7"}]
    assert loads(dumps(a)) == a


@given(elements, elements, elements)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a
    assert a - a == LambdaElement()


@given(nonzero, nonzero)
def test_order_is_additive(a, b):
    assert order(a * b) == order(a) + order(b)


@given(elements, elements)
def test_specialize_at_one_is_multiplicative(a, b):
    assert specialize(a * b, 1) == specialize(a, 1) * specialize(b, 1)


@given(elements, elements)
def test_single_variable_is_a_homomorphism(a, b):
    N = common_denominator([a, b])
    prod = to_single_variable(a * b, N)
    assert prod == laurent_mul(to_single_variable(a, N), to_single_variable(b, N))


@given(elements)
def test_json_round_trip(a):
    assert from_json(to_json(a)) == a


@settings(max_examples=30)
@given(st.lists(st.lists(elements, min_size=2, max_size=2), min_size=2, max_size=2),
       st.lists(st.lists(elements, min_size=2, max_size=2), min_size=2, max_size=2))
def test_matrix_product_matches_entries(A, B):
    M = LambdaMatrix.from_rows(A) @ LambdaMatrix.from_rows(B)
    for i in range(2):
        for j in range(2):
            assert M.entry(i, j) == A[i][0] * B[0][j] + A[i][1] * B[1][j]


def test_matrix_specialize_and_order():
    m = LambdaMatrix.from_rows([[q(1) + 1, 0], [q(Fraction(1, 2)), 3]])
    assert m.order() == 0
    assert m.specialize(1).tolist() == [[2, 0], [1, 3]]
    assert LambdaMatrix.zeros(2, 2).order() == math.inf
