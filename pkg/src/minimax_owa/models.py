"""Minimax disparity models in weight space and in alpha space.

Weight space: variables ``(w_1..w_n, delta)``; minimize ``delta`` subject to
the sum and orness equalities and ``|w_i - w_{i+1}| <= delta``.

Alpha space: variables ``(alpha_1..alpha_k, delta)`` with ``alpha_{k+1..n}``
fixed at zero. Weights are the linear image ``w = alpha @ W`` of the
binomial weight matrix, so every weight-space constraint stays linear.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .combinatorics import weight_array
from .decomposition import (
    AlphaVector,
    ConsistencyError,
    alpha_to_weights,
    binomial_orness,
    check_alpha_feasibility,
    weights_to_alpha,
)
from .lp import INFEASIBLE, OPTIMAL, UNBOUNDED, LinearProgram, solve_lp
from .owa import EPS_FEAS, WeightVector, disparity, orness

logger = logging.getLogger(__name__)

WEIGHT_SPACE = "weight-space"
ALPHA_SPACE = "alpha-space"
METHOD_ALIASES = {
    "weights": WEIGHT_SPACE,
    "weight": WEIGHT_SPACE,
    WEIGHT_SPACE: WEIGHT_SPACE,
    "alpha": ALPHA_SPACE,
    ALPHA_SPACE: ALPHA_SPACE,
}

# exact alpha for weight-space optima; beyond this the coefficients leave float range
EXACT_ALPHA_LIMIT = 512


def _check_args(n: int, eta: float, k: int | None = None) -> None:
    if n < 2:
        raise ValueError(f"dimension n must be >= 2, got {n}")
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"orness eta={eta} outside [0, 1]")
    if k is not None and not 1 <= k <= n:
        raise ValueError(f"k={k} outside 1..{n}")


def normalize_method(method: str) -> str:
    try:
        return METHOD_ALIASES[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; use 'weights' or 'alpha'") from None


def build_weight_model(n: int, eta: float) -> LinearProgram:
    _check_args(n, eta)
    v = n + 1
    objective = np.zeros(v)
    objective[-1] = 1.0
    a_eq = np.zeros((2, v))
    a_eq[0, :n] = 1.0
    a_eq[1, :n] = np.arange(n) / (n - 1)
    diff = np.zeros((n - 1, n))
    idx = np.arange(n - 1)
    diff[idx, idx] = 1.0
    diff[idx, idx + 1] = -1.0
    a_ub = np.zeros((2 * (n - 1), v))
    a_ub[: n - 1, :n] = diff
    a_ub[n - 1 :, :n] = -diff
    a_ub[:, -1] = -1.0
    bounds = [(0.0, 1.0)] * n + [(0.0, None)]
    lp = LinearProgram(objective, a_eq, [1.0, eta], a_ub, np.zeros(2 * (n - 1)), bounds)
    lp.names = [f"w_{i}" for i in range(1, n + 1)] + ["delta"]
    return lp


def build_alpha_model(n: int, eta: float, k: int | None = None) -> LinearProgram:
    """LP over ``(alpha_1..alpha_k, delta)``.

    Besides the sum, orness and disparity rows it carries ``alpha_1 >= 0``
    (as a bound) and the n - 1 inequalities that keep ``w_1..w_{n-1} >= 0``.
    """
    k = n if k is None else k
    _check_args(n, eta, k)
    W = weight_array(n)[:k]  # row j-1 is C_j
    v = k + 1
    objective = np.zeros(v)
    objective[-1] = 1.0

    a_eq = np.zeros((2, v))
    a_eq[0, :k] = 1.0
    a_eq[1, :k] = [float(binomial_orness(n, j)) for j in range(1, k + 1)]

    gaps = (W[:, :-1] - W[:, 1:]).T  # row i: coefficients of w_i - w_{i+1}
    # 1 - n*C(i-1, j-1)/C(n, j) = 1 - n*w_{j, n-i+1}, for i = 2..n
    cond = 1.0 - n * W[:, n - 2 :: -1].T
    cond[:, 0] = 0.0  # j = 1 does not appear
    a_ub = np.zeros((3 * (n - 1), v))
    a_ub[: n - 1, :k] = gaps
    a_ub[n - 1 : 2 * (n - 1), :k] = -gaps
    a_ub[: 2 * (n - 1), -1] = -1.0
    a_ub[2 * (n - 1) :, :k] = cond
    b_ub = np.concatenate([np.zeros(2 * (n - 1)), np.ones(n - 1)])

    bounds = [(0.0, None)] + [(None, None)] * (k - 1) + [(0.0, None)]
    lp = LinearProgram(objective, a_eq, [1.0, eta], a_ub, b_ub, bounds)
    lp.names = [f"alpha_{j}" for j in range(1, k + 1)] + ["delta"]
    return lp


@dataclass
class DisparitySolution:
    n: int
    eta: float
    method: str
    k: int
    status: str
    weights: WeightVector | None = None
    alpha: AlphaVector | None = None
    delta: float | None = None
    iterations: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL

    def validate(self, tol: float = EPS_FEAS) -> None:
        """Raise ``ConsistencyError`` if an optimal solution breaks an invariant."""
        if not self.optimal:
            return
        w = self.weights
        try:
            w.validate(tol)
        except ValueError as exc:
            raise ConsistencyError(f"recovered weights invalid: {exc}") from exc
        if abs(float(disparity(w)) - self.delta) > tol:
            raise ConsistencyError(
                f"disparity {float(disparity(w)):.12g} != delta {self.delta:.12g}"
            )
        if abs(float(orness(w)) - self.eta) > tol:
            raise ConsistencyError(f"orness {float(orness(w)):.12g} != eta {self.eta:.12g}")
        if self.alpha is not None and self.method == ALPHA_SPACE:
            report = check_alpha_feasibility(self.alpha, tol=tol)
            if not report.feasible:
                raise ConsistencyError(f"alpha violates conditions {report.violated}")
            gap = np.max(np.abs(np.asarray(report.weights, dtype=float) - w.as_array()))
            if gap > tol:
                raise ConsistencyError(f"alpha and weights disagree by {gap:.3g}")


def solve_minimax_disparity(
    n: int,
    eta: float,
    method: str = WEIGHT_SPACE,
    k: int | None = None,
    backend: str | None = None,
    rule: str = "dantzig",
) -> DisparitySolution:
    method = normalize_method(method)
    if method == WEIGHT_SPACE:
        _check_args(n, eta)
        k = n
        outcome = solve_lp(build_weight_model(n, eta), rule=rule, backend=backend)
    else:
        k = n if k is None else k
        outcome = solve_lp(build_alpha_model(n, eta, k), rule=rule, backend=backend)

    if outcome.status == UNBOUNDED:
        raise ConsistencyError("disparity LP reported unbounded; delta >= 0 forbids it")
    sol = DisparitySolution(
        n=n, eta=eta, method=method, k=k, status=outcome.status,
        iterations=outcome.iterations,
    )
    if outcome.status == INFEASIBLE:
        return sol

    z = outcome.solution
    sol.delta = max(float(z[-1]), 0.0)
    if method == WEIGHT_SPACE:
        w = np.clip(z[:n], 0.0, None)
        sol.weights = WeightVector.from_solver(w)
        if n <= EXACT_ALPHA_LIMIT:
            exact = weights_to_alpha([Fraction(float(x)) for x in w], exact=True)
            sol.alpha = AlphaVector(tuple(float(a) for a in exact))
        else:
            sol.notes.append(f"alpha omitted: coefficients overflow floats for n > {EXACT_ALPHA_LIMIT}")
    else:
        alpha = np.zeros(n)
        alpha[:k] = z[:k]
        sol.alpha = AlphaVector(tuple(float(a) for a in alpha))
        sol.weights = alpha_to_weights(sol.alpha)
        sol.weights = WeightVector.from_solver(
            np.clip(sol.weights.as_array(), 0.0, None)
        )
    sol.validate()
    return sol


@dataclass(frozen=True)
class KCurvePoint:
    k: int
    status: str
    delta: float | None


def kcurve(n: int, eta: float, k_values: Sequence[int], **solve_kw) -> list[KCurvePoint]:
    """Optimal delta of the alpha-space model for each truncation level."""
    for k in k_values:
        _check_args(n, eta, k)
    out = []
    for k in k_values:
        sol = solve_minimax_disparity(n, eta, ALPHA_SPACE, k, **solve_kw)
        out.append(KCurvePoint(k, sol.status, sol.delta))
    return out


def sweep(
    n: int,
    eta_values: Sequence[float],
    method: str = WEIGHT_SPACE,
    k: int | None = None,
    workers: int = 1,
    **solve_kw,
) -> list[DisparitySolution]:
    """One solution per orness level, in input order; infeasible ones included."""
    method = normalize_method(method)
    for eta in eta_values:
        _check_args(n, eta, k)

    def one(eta):
        return solve_minimax_disparity(n, eta, method, k, **solve_kw)

    if workers <= 1 or len(eta_values) <= 1:
        return [one(eta) for eta in eta_values]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, eta_values))
