from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minimax_owa.combinatorics import weight_matrix
from minimax_owa.decomposition import binomial_orness
from minimax_owa.owa import (
    InvalidWeightsError,
    WeightVector,
    disparity,
    evaluate_binomial_owa,
    evaluate_owa,
    maximum_weights,
    mean_weights,
    minimum_weights,
    orness,
    reverse,
)


@st.composite
def weight_vectors(draw, min_n=2, max_n=12):
    n = draw(st.integers(min_n, max_n))
    raw = draw(st.lists(st.floats(0, 1), min_size=n, max_size=n))
    total = sum(raw)
    if total == 0:
        return np.full(n, 1.0 / n)
    return np.array(raw) / total


def test_evaluate_owa_examples():
    assert evaluate_owa((1, 0, 0), (5, 2, 9)) == 2
    assert evaluate_owa((Fraction(1, 3),) * 3, (3, 6, 9)) == 6
    assert evaluate_owa(maximum_weights(10), range(1, 11)) == 10


def test_evaluate_owa_length_mismatch():
    with pytest.raises(ValueError):
        evaluate_owa((0.5, 0.5), (1, 2, 3))


def test_orness_examples():
    assert orness(minimum_weights(10)) == 0
    assert orness(mean_weights(10)) == Fraction(1, 2)


def test_orness_of_rounded_table_column():
    # two-decimal rounding leaves this column summing to 1.03
    printed = (0, 0.03, 0.05, 0.08, 0.09, 0.11, 0.13, 0.16, 0.18, 0.20)
    with pytest.raises(InvalidWeightsError):
        WeightVector.from_user(printed)
    normalized = np.array(printed) / sum(printed)
    assert orness(normalized) == pytest.approx(0.7, abs=0.01)
    # unrounded: w_i = a + (i-1) d with 10a + 45d = 1 and 45a + 285d = 6.3
    d = Fraction(18, 825)
    a = (1 - 45 * d) / 10
    exact = [a + i * d for i in range(10)]
    assert orness(exact) == Fraction(7, 10)


def test_disparity_examples():
    assert disparity(mean_weights(10)) == 0
    assert disparity(minimum_weights(10)) == 1
    assert disparity((0.4, 0.3, 0.2, 0.1)) == pytest.approx(0.1)


def test_binomial_owa_examples():
    x = (4.0, 1.0, 7.0, 2.0)
    assert evaluate_binomial_owa(4, 1, x) == pytest.approx(np.mean(x))
    assert evaluate_binomial_owa(3, 3, (7, 3, 5)) == 3
    assert evaluate_binomial_owa(4, 2, (1, 2, 3, 4)) == Fraction(5, 3)


def test_binomial_owa_errors():
    with pytest.raises(ValueError):
        evaluate_binomial_owa(4, 2, (1, 2, 3))
    with pytest.raises(IndexError):
        evaluate_binomial_owa(4, 5, (1, 2, 3, 4))


def test_weight_vector_validation():
    WeightVector.from_user((0.25, 0.25, 0.5))
    with pytest.raises(InvalidWeightsError):
        WeightVector.from_user((0.5, 0.6))
    with pytest.raises(InvalidWeightsError):
        WeightVector.from_user((1.2, -0.2))
    # solver noise inside the feasibility tolerance is accepted
    WeightVector.from_solver((0.5 + 5e-10, 0.5 - 5e-10, -1e-10))
    with pytest.raises(InvalidWeightsError):
        WeightVector.from_user((1.0,))


@given(weight_vectors(), st.floats(-100, 100))
def test_idempotent_on_constants(w, c):
    assert evaluate_owa(w, [c] * len(w)) == pytest.approx(c, abs=1e-9)


@given(weight_vectors(), st.data())
def test_bounded_and_monotone(w, data):
    n = len(w)
    x = np.array(data.draw(st.lists(st.floats(-1e3, 1e3), min_size=n, max_size=n)))
    bump = np.array(data.draw(st.lists(st.floats(0, 10), min_size=n, max_size=n)))
    a = evaluate_owa(w, x)
    assert x.min() - 1e-9 <= a <= x.max() + 1e-9
    assert a <= evaluate_owa(w, x + bump) + 1e-9


@given(weight_vectors())
def test_reverse_symmetries(w):
    assert orness(reverse(w)) == pytest.approx(1 - orness(w), abs=1e-12)
    assert disparity(reverse(w)) == disparity(w)
    assert 0 - 1e-12 <= orness(w) <= 1 + 1e-12


@settings(max_examples=25)
@given(st.integers(2, 30), st.data())
def test_binomial_row_orness_exact(n, data):
    j = data.draw(st.integers(1, n))
    row = weight_matrix(n, exact=True).row(j)
    assert orness(row) == Fraction(n - j, (n - 1) * (j + 1)) == binomial_orness(n, j)
