"""Binomial decomposition of OWA weights.

Any OWA weighting vector is uniquely ``w = sum_j alpha_j * C_j`` where ``C_j``
is row ``j`` of the binomial weight matrix. Since ``w_ji = 0`` for
``i + j > n + 1``, weight ``w_i`` only involves ``alpha_1..alpha_{n-i+1}``
and the system is anti-triangular: ``w_n`` fixes ``alpha_1``, ``w_{n-1}``
then fixes ``alpha_2``, and so on.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Sequence

import numpy as np

from .combinatorics import EXACT_LIMIT, binomial, weight_matrix
from .owa import EPS_FEAS, WeightVector, _as_tuple


class InfeasibleAlphaError(ValueError):
    """Alpha coefficients that do not encode a valid OWA weighting vector."""

    def __init__(self, message: str, condition: int):
        super().__init__(message)
        self.condition = condition


class ConsistencyError(RuntimeError):
    pass


@dataclass(frozen=True)
class AlphaVector:
    """Coefficients alpha_1..alpha_n of the binomial decomposition."""

    values: tuple

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def k(self) -> int:
        """Highest level with a nonzero coefficient."""
        nz = [j for j, a in enumerate(self.values, start=1) if a != 0]
        return nz[-1] if nz else 0

    def as_array(self) -> np.ndarray:
        return np.array([float(a) for a in self.values])

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, idx):
        return self.values[idx]


def _alpha_tuple(a) -> tuple:
    if isinstance(a, AlphaVector):
        return a.values
    if isinstance(a, np.ndarray):
        return tuple(float(v) for v in a)
    return tuple(a)


def _exact_mode(values: tuple, exact: bool | None) -> bool:
    return len(values) <= EXACT_LIMIT if exact is None else exact


@lru_cache(maxsize=128)
def _float_rows(n: int) -> np.ndarray:
    arr = weight_matrix(n, exact=False).to_array()
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=128)
def _pascal(n: int) -> tuple:
    """``rows[m][q] = C(m, q)`` for ``0 <= m, q < n``."""
    return tuple(tuple(binomial(m, q) for q in range(n)) for m in range(n))


@lru_cache(maxsize=128)
def _level_sizes(n: int) -> tuple:
    return tuple(binomial(n, j) for j in range(1, n + 1))


def _common_denominator(values) -> tuple[list[int], int]:
    fr = [Fraction(v) for v in values]
    den = math.lcm(*(f.denominator for f in fr))
    return [f.numerator * (den // f.denominator) for f in fr], den


# Exact paths work with beta_j = alpha_j / C(n, j), which turns the system into
# w_i = sum_j C(n - i, j - 1) beta_j: integer coefficients and a unit diagonal.


def _combine(alpha: tuple, exact: bool) -> tuple:
    n = len(alpha)
    if not exact:
        return tuple(float(v) for v in np.asarray(alpha, dtype=float) @ _float_rows(n))
    sizes = _level_sizes(n)
    nums, den = _common_denominator(Fraction(a) / c for a, c in zip(alpha, sizes))
    pascal = _pascal(n)
    out = []
    for i in range(1, n + 1):
        coef = pascal[n - i]
        out.append(Fraction(sum(coef[j] * nums[j] for j in range(n - i + 1)), den))
    return tuple(out)


def alpha_to_weights(a, tol: float = EPS_FEAS, exact: bool | None = None) -> WeightVector:
    """Weights ``w_i = sum_j w_ji alpha_j``; rejects alpha violating the conditions.

    Raises ``InfeasibleAlphaError`` whose ``condition`` is 0 for the sum
    constraint, 1 for ``alpha_1 >= 0`` and ``i`` (2..n) for the i-th
    inequality.
    """
    alpha = _alpha_tuple(a)
    report = check_alpha_feasibility(alpha, tol=tol, exact=exact)
    if not report.sum_ok:
        raise InfeasibleAlphaError(
            f"alpha sums to {float(sum(alpha)):.12g}, not 1", condition=0
        )
    if not report.feasible:
        cond = report.violated[0]
        raise InfeasibleAlphaError(
            f"condition {cond} violated (slack {float(report.slacks[cond - 1]):.3g})",
            condition=cond,
        )
    return WeightVector(report.weights)


def weights_to_alpha(w, exact: bool | None = None) -> AlphaVector:
    """Solve the decomposition system for alpha by back-substitution from w_n."""
    weights = _as_tuple(w)
    n = len(weights)
    exact = _exact_mode(weights, exact)
    if exact:
        nums, den = _common_denominator(weights)
        pascal = _pascal(n)
        beta: list[int] = []
        for step in range(n):
            coef = pascal[step]  # row C(n - i, .) for i = n - step
            beta.append(nums[n - 1 - step] - sum(coef[j] * beta[j] for j in range(step)))
        sizes = _level_sizes(n)
        return AlphaVector(tuple(Fraction(c * b, den) for c, b in zip(sizes, beta)))
    rows = _float_rows(n)
    wv = np.asarray(weights, dtype=float)
    out = np.zeros(n)
    for step in range(n):
        i = n - 1 - step
        acc = wv[i] - rows[:step, i] @ out[:step]
        out[step] = acc / rows[step, i]
    return AlphaVector(tuple(float(v) for v in out))


def binomial_orness(n: int, j: int) -> Fraction:
    """Orness of C_j, i.e. (n - j) / ((n - 1)(j + 1))."""
    if n < 2:
        raise ValueError(f"dimension n must be >= 2, got {n}")
    if not 1 <= j <= n:
        raise IndexError(f"level j={j} outside 1..{n}")
    return Fraction(n - j, (n - 1) * (j + 1))


def orness_from_alpha(a):
    alpha = _alpha_tuple(a)
    n = len(alpha)
    if all(isinstance(v, (int, Fraction)) for v in alpha):
        return sum(binomial_orness(n, j) * v for j, v in enumerate(alpha, start=1))
    return sum(float(binomial_orness(n, j)) * float(v) for j, v in enumerate(alpha, start=1))


@dataclass
class FeasibilityReport:
    """Signed slacks of the alpha conditions next to the direct weight test.

    ``slacks[0]`` is ``alpha_1`` (must be >= 0) and ``slacks[i - 1]`` for
    ``i = 2..n`` is ``1 - sum_{j>=2} [1 - n C(i-1,j-1)/C(n,j)] alpha_j``.
    """

    slacks: tuple
    sum_residual: float
    weights: tuple
    tol: float
    violated: list[int] = field(default_factory=list)

    @property
    def sum_ok(self) -> bool:
        return abs(self.sum_residual) <= self.tol

    @property
    def feasible(self) -> bool:
        return self.sum_ok and not self.violated

    @property
    def direct_feasible(self) -> bool:
        return self.sum_ok and all(-self.tol <= w <= 1 + self.tol for w in self.weights)


def condition_slacks(alpha: Sequence, exact: bool | None = None) -> tuple:
    """Slacks of ``alpha_1 >= 0`` and the n - 1 inequalities, as written."""
    alpha = _alpha_tuple(alpha)
    n = len(alpha)
    exact = _exact_mode(alpha, exact)
    active = [j for j in range(2, n + 1) if alpha[j - 1] != 0]
    if exact:
        alpha = tuple(Fraction(v) for v in alpha)
        # 1 - sum_{j>=2} alpha_j + n * sum_{j>=2} C(i-1, j-1) * alpha_j / C(n, j)
        sizes = _level_sizes(n)
        nums, den = _common_denominator(alpha[j - 1] / sizes[j - 1] for j in active)
        tail = sum(alpha[1:])
        pascal = _pascal(n)
        slacks = [alpha[0]]
        for i in range(2, n + 1):
            coef = pascal[i - 1]
            s = sum(coef[j - 1] * b for j, b in zip(active, nums))
            slacks.append(1 - tail + Fraction(n * s, den))
        return tuple(slacks)
    denoms = {j: binomial(n, j) for j in active}
    slacks = [float(alpha[0])]
    for i in range(2, n + 1):
        lhs = sum(
            (1.0 - n * (binomial(i - 1, j - 1) / denoms[j])) * float(alpha[j - 1])
            for j in active
        )
        slacks.append(1 - lhs)
    return tuple(slacks)


def check_alpha_feasibility(
    a, tol: float = EPS_FEAS, exact: bool | None = None
) -> FeasibilityReport:
    """Evaluate the alpha conditions and cross-check them against the weights.

    Algebraically slack ``i`` equals ``n * w_{n-i+1} + 1 - sum(alpha)`` and
    slack 1 is ``n * w_n``; a mismatch means the conditions were mistranscribed and
    raises ``ConsistencyError``.
    """
    alpha = _alpha_tuple(a)
    n = len(alpha)
    if n < 2:
        raise ValueError("alpha needs n >= 2")
    exact = _exact_mode(alpha, exact)
    if exact:
        alpha = tuple(Fraction(v) for v in alpha)
    slacks = condition_slacks(alpha, exact=exact)
    weights = _combine(alpha, exact)
    residual = sum(alpha) - 1
    scale = max(1.0, max(abs(float(v)) for v in alpha))
    for idx, s in enumerate(slacks):
        expected = n * weights[n - 1 - idx] - (residual if idx else 0)
        if abs(float(s - expected)) > 1e-9 * scale * n:
            raise ConsistencyError(
                f"slack of condition {idx + 1} is {float(s):.12g} "
                f"but n*w_{n - idx} is {float(expected):.12g}"
            )
    violated = [idx + 1 for idx, s in enumerate(slacks) if s < -tol]
    return FeasibilityReport(
        slacks=slacks,
        sum_residual=float(residual),
        weights=weights,
        tol=tol,
        violated=violated,
    )
