"""OWA weighting vectors, their evaluation, and the orness/disparity measures.

Measures are written with plain Python arithmetic so that they accept
``Fraction`` entries and return exact results for them.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .combinatorics import weight_row

EPS_FEAS = 1e-9
EPS_INPUT = 1e-12


class InvalidWeightsError(ValueError):
    pass


@dataclass(frozen=True)
class WeightVector:
    """OWA weights ``w_1..w_n`` applied to the increasing reordering of x."""

    values: tuple

    def __post_init__(self):
        if len(self.values) < 2:
            raise InvalidWeightsError(f"need at least 2 weights, got {len(self.values)}")

    @classmethod
    def from_user(cls, values: Sequence) -> "WeightVector":
        return cls.validated(values, tol=EPS_INPUT)

    @classmethod
    def from_solver(cls, values: Sequence, tol: float = EPS_FEAS) -> "WeightVector":
        return cls.validated(values, tol=tol)

    @classmethod
    def validated(cls, values: Sequence, tol: float) -> "WeightVector":
        vec = cls(_as_tuple(values))
        vec.validate(tol)
        return vec

    @property
    def n(self) -> int:
        return len(self.values)

    def validate(self, tol: float = EPS_FEAS) -> None:
        for i, v in enumerate(self.values, start=1):
            if not (-tol <= v <= 1 + tol):
                raise InvalidWeightsError(f"w_{i}={float(v):.6g} outside [0, 1]")
        total = sum(self.values)
        if abs(total - 1) > tol:
            raise InvalidWeightsError(f"weights sum to {float(total):.12g}, not 1")

    def as_array(self) -> np.ndarray:
        return np.array([float(v) for v in self.values])

    def reverse(self) -> "WeightVector":
        return WeightVector(self.values[::-1])

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, idx):
        return self.values[idx]


def _as_tuple(values) -> tuple:
    if isinstance(values, WeightVector):
        return values.values
    if isinstance(values, np.ndarray):
        return tuple(float(v) for v in values)
    return tuple(values)


def minimum_weights(n: int) -> WeightVector:
    """w_* = (1, 0, ..., 0): orness 0, disparity 1."""
    return WeightVector((Fraction(1),) + (Fraction(0),) * (n - 1))


def mean_weights(n: int) -> WeightVector:
    """w_A = (1/n, ..., 1/n): orness 1/2, disparity 0."""
    return WeightVector((Fraction(1, n),) * n)


def maximum_weights(n: int) -> WeightVector:
    """w^* = (0, ..., 0, 1): orness 1, disparity 1."""
    return WeightVector((Fraction(0),) * (n - 1) + (Fraction(1),))


def reverse(w) -> WeightVector:
    return WeightVector(_as_tuple(w)[::-1])


def evaluate_owa(w, x: Sequence[float]):
    """Aggregate ``x`` with weights ``w`` on its increasing reordering."""
    weights = _as_tuple(w)
    if len(x) != len(weights):
        raise ValueError(f"x has length {len(x)}, weights have length {len(weights)}")
    return sum(wi * xi for wi, xi in zip(weights, sorted(x)))


def orness(w):
    weights = _as_tuple(w)
    n = len(weights)
    if n < 2:
        raise InvalidWeightsError("orness needs n >= 2")
    return sum(i * wi for i, wi in enumerate(weights)) / (n - 1)


def disparity(w):
    """Largest absolute gap between adjacent weights."""
    weights = _as_tuple(w)
    return max(abs(a - b) for a, b in zip(weights, weights[1:]))


def evaluate_binomial_owa(n: int, j: int, x: Sequence[float], exact: bool | None = None):
    """C_j(x): the OWA whose weights are row ``j`` of the binomial weight matrix."""
    if len(x) != n:
        raise ValueError(f"x has length {len(x)}, expected {n}")
    row = weight_row(n, j, exact=exact)
    return sum(wi * xi for wi, xi in zip(row, sorted(x)))
