"""Binomial coefficients and the binomial OWA weight matrix.

Entry ``(j, i)`` of the matrix (both 1-based) is::

    w_ji = C(n - i, j - 1) / C(n, j)

Row ``j`` is the weighting vector of the binomial OWA function ``C_j``: row 1
is the arithmetic mean, row ``n`` the minimum.

Exact rationals are used up to ``EXACT_LIMIT``; past that the float path
evaluates each row as a running product of ratios no larger than one, so no
raw binomial is ever formed.
"""
from __future__ import annotations

import math
import operator
import sys
from fractions import Fraction
from typing import Iterator, Union

import numpy as np

EXACT_LIMIT = 64
DENSE_LIMIT = 10_000

Number = Union[Fraction, float]


def binomial(p: int, q: int) -> int:
    """Return C(p, q), with C(p, q) = 0 when p < q."""
    p, q = operator.index(p), operator.index(q)
    if p < 0 or q < 0:
        raise ValueError(f"binomial needs nonnegative arguments, got ({p}, {q})")
    if p < q:
        return 0
    return math.comb(p, q)


def binomial_float(p: int, q: int) -> float:
    """C(p, q) as a float; raises OverflowError instead of returning inf."""
    value = binomial(p, q)
    try:
        return float(value)
    except OverflowError:
        raise OverflowError(
            f"C({p}, {q}) exceeds the float range (max {sys.float_info.max:.3g})"
        ) from None


def _check_indices(n: int, j: int, i: int | None = None) -> None:
    if n < 2:
        raise ValueError(f"dimension n must be >= 2, got {n}")
    if not 1 <= j <= n:
        raise IndexError(f"level j={j} outside 1..{n}")
    if i is not None and not 1 <= i <= n:
        raise IndexError(f"index i={i} outside 1..{n}")


def _use_exact(n: int, exact: bool | None) -> bool:
    return n <= EXACT_LIMIT if exact is None else exact


def binomial_weight(n: int, j: int, i: int, exact: bool | None = None) -> Number:
    """Weight of ``x_(i)`` in the binomial OWA function ``C_j``.

    Returns a ``Fraction`` in exact mode (default for ``n <= 64``), else a float.
    """
    _check_indices(n, j, i)
    if i + j > n + 1:
        return Fraction(0) if _use_exact(n, exact) else 0.0
    if _use_exact(n, exact):
        return Fraction(binomial(n - i, j - 1), binomial(n, j))
    # w_ji = (j/n) * prod_{t=1}^{i-1} (n-j-t+1)/(n-t)
    value = j / n
    for t in range(1, i):
        value *= (n - j - t + 1) / (n - t)
    return value


def weight_row(n: int, j: int, exact: bool | None = None) -> list[Fraction] | np.ndarray:
    """Row ``j`` of the binomial weight matrix.

    Exact mode returns a list of ``Fraction``; float mode a float64 array.
    """
    _check_indices(n, j)
    if _use_exact(n, exact):
        denom = binomial(n, j)
        return [Fraction(binomial(n - i, j - 1), denom) for i in range(1, n + 1)]
    row = np.zeros(n)
    width = n - j + 1
    t = np.arange(1, width)
    ratios = (n - j - t + 1) / (n - t)
    row[0] = j / n
    row[1:width] = (j / n) * np.cumprod(ratios)
    return row


class BinomialWeightMatrix:
    """The n-by-n binomial weight matrix, indexed 1-based as ``m[j, i]``.

    Rows are built lazily. Up to ``DENSE_LIMIT`` they are cached so the
    dense array can be assembled; beyond it use :meth:`rows`.
    """

    def __init__(self, n: int, exact: bool | None = None):
        if n < 2:
            raise ValueError(f"dimension n must be >= 2, got {n}")
        self.n = n
        self.exact = _use_exact(n, exact)
        self._cache: dict[int, list | np.ndarray] = {}

    def __repr__(self) -> str:
        mode = "exact" if self.exact else "float"
        return f"BinomialWeightMatrix(n={self.n}, {mode})"

    def row(self, j: int):
        if j in self._cache:
            return self._cache[j]
        r = weight_row(self.n, j, exact=self.exact)
        if self.n <= DENSE_LIMIT:
            self._cache[j] = r
        return r

    def rows(self) -> Iterator:
        for j in range(1, self.n + 1):
            yield self.row(j)

    def __getitem__(self, key: tuple[int, int]):
        j, i = key
        _check_indices(self.n, j, i)
        return self.row(j)[i - 1]

    def to_array(self) -> np.ndarray:
        """Dense float64 copy, row ``j - 1`` holding ``C_j``."""
        if self.n > DENSE_LIMIT:
            raise MemoryError(
                f"refusing to densify n={self.n} > {DENSE_LIMIT}; iterate rows() instead"
            )
        if not self.exact:
            return np.vstack(list(self.rows()))
        return np.array([[float(v) for v in r] for r in self.rows()], dtype=float)

    def to_fractions(self) -> list[list[Fraction]]:
        if not self.exact:
            raise ValueError("matrix was built in float mode")
        return [list(r) for r in self.rows()]


def weight_matrix(n: int, exact: bool | None = None) -> BinomialWeightMatrix:
    return BinomialWeightMatrix(n, exact=exact)


def weight_array(n: int) -> np.ndarray:
    """Float matrix for the LP builders, exact-rounded when ``n <= EXACT_LIMIT``."""
    return weight_matrix(n).to_array()
