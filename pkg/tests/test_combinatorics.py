from fractions import Fraction

import numpy as np
import pytest

from minimax_owa.combinatorics import (
    BinomialWeightMatrix,
    binomial,
    binomial_float,
    binomial_weight,
    weight_matrix,
    weight_row,
)


def pascal_triangle(rows):
    """Additive oracle: C(p, q) built only from C(p-1, q-1) + C(p-1, q)."""
    tri = [[1]]
    for p in range(1, rows):
        prev = tri[-1]
        tri.append([1] + [prev[q - 1] + prev[q] for q in range(1, p)] + [1])
    return tri


def test_binomial_examples():
    assert binomial(4, 2) == 6
    assert binomial(3, 5) == 0
    assert binomial(10, 3) == 120


def test_binomial_matches_pascal():
    tri = pascal_triangle(70)
    for p in range(70):
        for q in range(75):
            expected = tri[p][q] if q <= p else 0
            assert binomial(p, q) == expected


def test_binomial_rejects_bad_input():
    with pytest.raises(ValueError):
        binomial(-1, 2)
    with pytest.raises(TypeError):
        binomial(2.5, 1)


def test_binomial_is_exact_beyond_64_bits():
    # C(68, 34) no longer fits in a signed 64-bit integer
    assert binomial(68, 34) > 2**63
    assert binomial(68, 34) == pascal_triangle(69)[68][34]


def test_binomial_float_reports_overflow():
    assert binomial_float(10, 3) == 120.0
    with pytest.raises(OverflowError):
        binomial_float(2000, 1000)


def test_binomial_weight_examples():
    assert binomial_weight(10, 1, 7) == Fraction(1, 10)
    assert binomial_weight(10, 5, 7) == 0
    # C(3,1)/C(4,2), C(2,1)/C(4,2), C(1,1)/C(4,2), C(0,1)/C(4,2)
    assert [binomial_weight(4, 2, i) for i in range(1, 5)] == [
        Fraction(1, 2), Fraction(1, 3), Fraction(1, 6), 0
    ]


@pytest.mark.parametrize("args", [(10, 0, 1), (10, 11, 1), (10, 1, 0), (10, 1, 11), (1, 1, 1)])
def test_binomial_weight_index_errors(args):
    with pytest.raises((IndexError, ValueError)):
        binomial_weight(*args)


def test_weight_matrix_examples():
    m = weight_matrix(2)
    assert m.to_fractions() == [[Fraction(1, 2), Fraction(1, 2)], [1, 0]]
    assert list(weight_matrix(4).row(4)) == [1, 0, 0, 0]
    np.testing.assert_array_equal(weight_matrix(10).to_array()[0], np.full(10, 0.1))


def test_weight_matrix_rejects_small_n():
    with pytest.raises(ValueError):
        weight_matrix(1)


@pytest.mark.parametrize("n", range(2, 31))
def test_matrix_invariants_exact(n):
    m = weight_matrix(n, exact=True)
    for j in range(1, n + 1):
        row = m.row(j)
        assert sum(row) == 1
        for i in range(1, n + 1):
            assert (row[i - 1] == 0) == (i + j > n + 1)
        head = row[: n - j + 1]
        assert all(v > 0 for v in head)
        if j == 1:
            assert all(v == Fraction(1, n) for v in row)
        else:
            assert all(a > b for a, b in zip(head, head[1:]))


@pytest.mark.parametrize("n", [2, 3, 7, 10, 33, 64, 65, 80, 100])
def test_float_path_matches_exact(n):
    exact = weight_matrix(n, exact=True)
    approx = weight_matrix(n, exact=False).to_array()
    for j in range(1, n + 1):
        ref = np.array([float(v) for v in exact.row(j)])
        nz = ref != 0
        assert np.all(approx[j - 1][~nz] == 0)
        rel = np.abs(approx[j - 1][nz] - ref[nz]) / ref[nz]
        assert rel.max() <= 1e-12


def test_scalar_float_weight_matches_row():
    row = weight_row(120, 7, exact=False)
    for i in (1, 2, 50, 114, 115):
        assert binomial_weight(120, 7, i, exact=False) == pytest.approx(row[i - 1], rel=1e-13)


def test_large_n_rows_without_densifying():
    m = BinomialWeightMatrix(20_000)
    assert not m.exact
    row = m.row(3)
    assert row.shape == (20_000,)
    assert row.sum() == pytest.approx(1.0, abs=1e-10)
    with pytest.raises(MemoryError):
        m.to_array()


def test_matrix_getitem_is_one_based():
    m = weight_matrix(4)
    assert m[2, 1] == Fraction(1, 2)
    assert m[4, 1] == 1
