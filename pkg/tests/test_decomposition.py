from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minimax_owa import decomposition as dec
from minimax_owa.combinatorics import binomial, weight_matrix
from minimax_owa.decomposition import (
    AlphaVector,
    ConsistencyError,
    InfeasibleAlphaError,
    alpha_to_weights,
    binomial_orness,
    check_alpha_feasibility,
    orness_from_alpha,
    weights_to_alpha,
)
from minimax_owa.owa import mean_weights, maximum_weights, minimum_weights, orness

W_STAR_ALPHA_10 = (10, -45, 120, -210, 252, -210, 120, -45, 10, -1)


def unit(n, j):
    return tuple(Fraction(int(k == j)) for k in range(1, n + 1))


def direct_weights(alpha):
    """Independent oracle: w = sum_j alpha_j * row_j with exact binomials."""
    n = len(alpha)
    return [
        sum(Fraction(binomial(n - i, j - 1), binomial(n, j)) * Fraction(alpha[j - 1])
            for j in range(1, n + 1))
        for i in range(1, n + 1)
    ]


def test_alpha_to_weights_special_vectors():
    for n in (2, 5, 10):
        assert alpha_to_weights(unit(n, 1)).values == mean_weights(n).values
        assert alpha_to_weights(unit(n, n)).values == minimum_weights(n).values


def test_alpha_to_weights_table_column():
    w = alpha_to_weights((1.98, -0.98) + (0,) * 8).as_array()
    printed = np.array([0, 0.03, 0.05, 0.08, 0.09, 0.11, 0.13, 0.16, 0.18, 0.20])
    close = np.abs(w - printed) <= 0.01
    # w_4 is printed as 0.08; the column's linear pattern gives 0.067
    assert close.sum() == 9 and not close[3]
    assert w[3] == pytest.approx(0.198 - 0.98 * 6 / 45)


def test_weights_to_alpha_examples():
    assert weights_to_alpha(mean_weights(7)).values == unit(7, 1)
    assert weights_to_alpha(maximum_weights(10)).values == W_STAR_ALPHA_10
    assert weights_to_alpha(minimum_weights(10)).values == unit(10, 10)
    expected = tuple((-1) ** (j - 1) * binomial(10, j) for j in range(1, 11))
    assert expected == W_STAR_ALPHA_10


@pytest.mark.parametrize("n", [2, 3, 8, 15, 30])
def test_binomial_rows_decompose_to_units(n):
    m = weight_matrix(n, exact=True)
    for j in range(1, n + 1):
        assert weights_to_alpha(m.row(j)).values == unit(n, j)


def test_binomial_orness_examples():
    assert binomial_orness(10, 1) == Fraction(1, 2) == orness(weight_matrix(10).row(1))
    assert binomial_orness(10, 10) == 0 == orness(weight_matrix(10).row(10))
    assert binomial_orness(10, 2) == Fraction(8, 27) == orness(weight_matrix(10).row(2))
    with pytest.raises(IndexError):
        binomial_orness(10, 11)


def test_orness_from_alpha_examples():
    assert orness_from_alpha(unit(10, 1)) == Fraction(1, 2)
    assert orness_from_alpha(unit(10, 10)) == 0
    a = (Fraction("1.98"), Fraction("-0.98")) + (Fraction(0),) * 8
    # the table rounds alpha to two decimals, so this is 0.6996..., not 0.7
    assert orness_from_alpha(a) == Fraction(1889, 2700)
    assert abs(float(orness_from_alpha(a)) - 0.7) <= 0.01
    assert orness_from_alpha((1.98, -0.98) + (0,) * 8) == pytest.approx(1889 / 2700, abs=1e-12)


def test_feasibility_examples():
    report = check_alpha_feasibility(unit(10, 1))
    assert report.feasible and all(s >= 0 for s in report.slacks)
    assert check_alpha_feasibility(W_STAR_ALPHA_10).feasible
    # brute force: n=3, alpha=(0, 3, -2)
    report = check_alpha_feasibility((0, 3, -2))
    w = direct_weights((0, 3, -2))
    assert w == [0, 1, 0]
    assert report.feasible == all(0 <= v <= 1 for v in w) == report.direct_feasible


def test_infeasible_alpha_is_rejected_with_condition():
    with pytest.raises(InfeasibleAlphaError) as err:
        alpha_to_weights((0, -1, 2))  # w = (4/3, -1/3, 0)
    assert err.value.condition == 2
    with pytest.raises(InfeasibleAlphaError) as err:
        alpha_to_weights((-0.5, 1.5, 0))
    assert err.value.condition == 1
    with pytest.raises(InfeasibleAlphaError) as err:
        alpha_to_weights((1, 1, 0))
    assert err.value.condition == 0


def test_slacks_are_scaled_weights():
    rng = np.random.default_rng(3)
    for n in range(2, 12):
        a = weights_to_alpha(rng.dirichlet(np.ones(n)))
        report = check_alpha_feasibility(a)
        w = report.weights
        residual = 1 - sum(a)  # float inputs never sum to exactly 1
        assert report.slacks[0] == n * w[-1]
        for i in range(2, n + 1):
            assert report.slacks[i - 1] == n * w[n - i] + residual


def test_mistranscribed_conditions_are_caught(monkeypatch):
    def wrong(alpha, exact=None):
        # uses C(n-i, j-1) instead of C(i-1, j-1)
        alpha = tuple(Fraction(v) for v in alpha)
        n = len(alpha)
        return (alpha[0],) + tuple(
            1 - sum((1 - Fraction(n * binomial(n - i, j - 1), binomial(n, j))) * alpha[j - 1]
                    for j in range(2, n + 1))
            for i in range(2, n + 1)
        )

    monkeypatch.setattr(dec, "condition_slacks", wrong)
    with pytest.raises(ConsistencyError):
        check_alpha_feasibility((Fraction(1, 2), Fraction(1, 2), 0, 0))


def test_float_mode_agrees_with_exact():
    rng = np.random.default_rng(4)
    for n in range(2, 16):
        for _ in range(50):
            w = rng.dirichlet(np.ones(n))
            a_float = weights_to_alpha(w, exact=False)
            a_exact = weights_to_alpha(w, exact=True)
            back = np.array(dec._combine(a_float.values, exact=False))
            assert np.max(np.abs(back - w)) <= 1e-10
            scale = np.abs(a_exact.as_array()).max()
            assert np.allclose(a_float.as_array(), a_exact.as_array(), atol=1e-9 * scale)


def test_float_mode_feasibility_report_above_exact_limit():
    n = 70
    rng = np.random.default_rng(5)
    alpha = np.zeros(n)
    alpha[:3] = [0.7, 0.2, 0.1]
    report = check_alpha_feasibility(alpha)
    assert report.feasible
    assert isinstance(report.weights[0], float)
    assert sum(report.weights) == pytest.approx(1.0)
    assert rng is not None


@st.composite
def dirichlet_weights(draw, max_n=20):
    n = draw(st.integers(2, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    conc = draw(st.sampled_from([0.1, 0.5, 1.0, 5.0]))
    return np.random.default_rng(seed).dirichlet(np.full(n, conc))


@settings(max_examples=60, deadline=None)
@given(dirichlet_weights())
def test_round_trip_exact(w):
    a = weights_to_alpha(w)
    back = alpha_to_weights(a)
    assert back.values == tuple(Fraction(float(v)) for v in w)


@settings(max_examples=60, deadline=None)
@given(dirichlet_weights(max_n=15))
def test_orness_from_alpha_matches_weights(w):
    a = weights_to_alpha(w)
    assert orness_from_alpha(a) == orness(alpha_to_weights(a))
    af = AlphaVector(tuple(float(v) for v in a))
    assert float(orness_from_alpha(af)) == pytest.approx(float(orness(w)), abs=1e-10)


@settings(max_examples=80, deadline=None)
@given(st.integers(3, 15), st.integers(0, 2**32 - 1))
def test_verdicts_agree_on_random_alpha(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=n) * rng.choice([0.1, 1, 10])
    a[0] += 1 - a.sum()
    report = check_alpha_feasibility(a)
    w = direct_weights(a)
    direct = all(-1e-9 <= v <= 1 + 1e-9 for v in w)
    assert report.feasible == direct == report.direct_feasible
