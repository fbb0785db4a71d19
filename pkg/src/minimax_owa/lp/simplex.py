"""Two-phase dense tableau simplex.

Memory is one dense ``(m) x (v + 1)`` float64 tableau, where ``m`` counts
equality rows, inequality rows and finite-bound rows, and ``v`` counts the
split structural columns plus one slack per inequality and one artificial
per row lacking a natural basic variable.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .kernels import get_backend

logger = logging.getLogger(__name__)

EPS_LP = 1e-9
PIVOT_TOL = 1e-10
STALL_LIMIT = 50

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


class MalformedProblemError(ValueError):
    pass


class NumericalError(RuntimeError):
    """The tableau drifted: the reported basis does not satisfy the constraints."""


Bound = tuple  # (lower | None, upper | None)


@dataclass
class LinearProgram:
    """minimize ``objective @ z`` subject to

    ``a_eq @ z == b_eq``, ``a_ub @ z <= b_ub`` and per-variable bounds, where
    ``None`` on either side of a bound means unbounded on that side.
    """

    objective: np.ndarray
    a_eq: np.ndarray
    b_eq: np.ndarray
    a_ub: np.ndarray
    b_ub: np.ndarray
    bounds: list = field(default_factory=list)
    names: list | None = None

    def __post_init__(self):
        self.objective = np.asarray(self.objective, dtype=float).ravel()
        v = self.objective.size
        self.a_eq = _as_matrix(self.a_eq, v, "equality")
        self.a_ub = _as_matrix(self.a_ub, v, "inequality")
        self.b_eq = np.asarray(self.b_eq, dtype=float).ravel()
        self.b_ub = np.asarray(self.b_ub, dtype=float).ravel()
        if self.b_eq.size != self.a_eq.shape[0]:
            raise MalformedProblemError(
                f"{self.a_eq.shape[0]} equality rows but {self.b_eq.size} right-hand sides"
            )
        if self.b_ub.size != self.a_ub.shape[0]:
            raise MalformedProblemError(
                f"{self.a_ub.shape[0]} inequality rows but {self.b_ub.size} right-hand sides"
            )
        if not self.bounds:
            self.bounds = [(0.0, None)] * v
        if len(self.bounds) != v:
            raise MalformedProblemError(f"{len(self.bounds)} bounds for {v} variables")
        for k, (lo, hi) in enumerate(self.bounds):
            if lo is not None and hi is not None and lo > hi:
                raise MalformedProblemError(f"variable {k}: lower bound {lo} > upper {hi}")
        for arr in (self.objective, self.a_eq, self.a_ub, self.b_eq, self.b_ub):
            if not np.all(np.isfinite(arr)):
                raise MalformedProblemError("non-finite coefficient in problem data")

    @classmethod
    def from_rows(
        cls,
        objective: Sequence[float],
        eq: Iterable[tuple[Sequence[float], float]] = (),
        ineq: Iterable[tuple[Sequence[float], float]] = (),
        bounds: Sequence[Bound] | None = None,
    ) -> "LinearProgram":
        v = len(objective)
        eq, ineq = list(eq), list(ineq)
        for kind, rows in (("equality", eq), ("inequality", ineq)):
            for r, (row, _) in enumerate(rows):
                if len(row) != v:
                    raise MalformedProblemError(
                        f"{kind} row {r} has length {len(row)}, expected {v}"
                    )
        a_eq = np.array([row for row, _ in eq], dtype=float).reshape(len(eq), v)
        a_ub = np.array([row for row, _ in ineq], dtype=float).reshape(len(ineq), v)
        return cls(
            objective,
            a_eq,
            [rhs for _, rhs in eq],
            a_ub,
            [rhs for _, rhs in ineq],
            list(bounds) if bounds is not None else [],
        )

    @property
    def num_vars(self) -> int:
        return self.objective.size

    @property
    def eq_constraints(self) -> list[tuple[np.ndarray, float]]:
        return list(zip(self.a_eq, self.b_eq))

    @property
    def ineq_constraints(self) -> list[tuple[np.ndarray, float]]:
        return list(zip(self.a_ub, self.b_ub))

    def violation(self, z: np.ndarray) -> float:
        """Largest constraint violation of point ``z`` (0 when feasible)."""
        z = np.asarray(z, dtype=float)
        worst = 0.0
        if self.b_eq.size:
            worst = max(worst, float(np.max(np.abs(self.a_eq @ z - self.b_eq))))
        if self.b_ub.size:
            worst = max(worst, float(np.max(self.a_ub @ z - self.b_ub)))
        for k, (lo, hi) in enumerate(self.bounds):
            if lo is not None:
                worst = max(worst, lo - z[k])
            if hi is not None:
                worst = max(worst, z[k] - hi)
        return worst


def _as_matrix(a, v: int, kind: str) -> np.ndarray:
    arr = np.asarray(a, dtype=float)
    if arr.size == 0:
        return np.zeros((0, v))
    if arr.ndim != 2 or arr.shape[1] != v:
        raise MalformedProblemError(
            f"{kind} matrix has shape {arr.shape}, expected (*, {v})"
        )
    return arr


@dataclass
class LpOutcome:
    status: str
    solution: np.ndarray | None = None
    objective_value: float | None = None
    iterations: int = 0
    max_violation: float | None = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class _StandardForm:
    """``z = offset + D @ y`` with ``y >= 0``, plus the rows it induces."""

    def __init__(self, lp: LinearProgram):
        v = lp.num_vars
        cols: list[tuple[int, float]] = []  # (original var, sign)
        offset = np.zeros(v)
        extra_rows: list[tuple[int, float]] = []  # (y column, upper)
        for k, (lo, hi) in enumerate(lp.bounds):
            if lo is not None:
                offset[k] = lo
                cols.append((k, 1.0))
                if hi is not None:
                    extra_rows.append((len(cols) - 1, hi - lo))
            elif hi is not None:
                offset[k] = hi
                cols.append((k, -1.0))
            else:
                cols.append((k, 1.0))
                cols.append((k, -1.0))
        D = np.zeros((v, len(cols)))
        for c, (k, s) in enumerate(cols):
            D[k, c] = s
        self.D = D
        self.offset = offset
        self.cost = lp.objective @ D
        self.cost0 = float(lp.objective @ offset)
        self.a_eq = lp.a_eq @ D
        self.b_eq = lp.b_eq - lp.a_eq @ offset
        bound_rows = np.zeros((len(extra_rows), len(cols)))
        bound_rhs = np.zeros(len(extra_rows))
        for r, (c, ub) in enumerate(extra_rows):
            bound_rows[r, c] = 1.0
            bound_rhs[r] = ub
        self.a_ub = np.vstack([lp.a_ub @ D, bound_rows])
        self.b_ub = np.concatenate([lp.b_ub - lp.a_ub @ offset, bound_rhs])

    def recover(self, y: np.ndarray) -> np.ndarray:
        return self.offset + self.D @ y


class SimplexSolver:
    """Single-use solver for one ``LinearProgram``.

    ``rule="bland"`` always enters the lowest-index improving column.
    ``rule="dantzig"`` enters the most negative reduced cost and falls back
    to Bland's rule for the rest of the phase after ``STALL_LIMIT``
    consecutive degenerate pivots.
    """

    def __init__(self, lp: LinearProgram, rule: str = "dantzig", backend: str | None = None,
                 max_iter: int | None = None):
        if rule not in ("bland", "dantzig"):
            raise ValueError(f"unknown pivot rule {rule!r}")
        self.lp = lp
        self.rule = rule
        self.kernels = get_backend(backend)
        self.form = _StandardForm(lp)
        self.iterations = 0
        m = self.form.b_eq.size + self.form.b_ub.size
        self.max_iter = max_iter or 50_000 + 20 * (m + self.form.cost.size)
        self._used = False

    def _build(self):
        f = self.form
        ny = f.cost.size
        m_eq, m_ub = f.b_eq.size, f.b_ub.size
        m = m_eq + m_ub
        a_eq, b_eq = f.a_eq.copy(), f.b_eq.copy()
        neg = b_eq < 0
        a_eq[neg] *= -1
        b_eq[neg] *= -1
        a_ub, b_ub = f.a_ub.copy(), f.b_ub.copy()
        slack_sign = np.ones(m_ub)
        neg_ub = b_ub < 0
        a_ub[neg_ub] *= -1
        b_ub[neg_ub] *= -1
        slack_sign[neg_ub] = -1.0

        needs_art = np.concatenate([np.ones(m_eq, dtype=bool), neg_ub])
        n_art = int(needs_art.sum())
        width = ny + m_ub + n_art + 1
        T = np.zeros((m, width))
        T[:m_eq, :ny] = a_eq
        T[m_eq:, :ny] = a_ub
        T[m_eq + np.arange(m_ub), ny + np.arange(m_ub)] = slack_sign
        T[:m_eq, -1] = b_eq
        T[m_eq:, -1] = b_ub
        basis = np.empty(m, dtype=np.int64)
        art_rows = np.flatnonzero(needs_art)
        T[art_rows, ny + m_ub + np.arange(n_art)] = 1.0
        basis[art_rows] = ny + m_ub + np.arange(n_art)
        plain = np.flatnonzero(~needs_art)
        basis[plain] = ny + (plain - m_eq)
        self.ny, self.m_ub, self.n_art = ny, m_ub, n_art
        return T, basis

    def _run(self, T, cost, basis, allowed, phase: int) -> str:
        k = self.kernels
        rule = self.rule
        stall = 0
        while True:
            if self.iterations >= self.max_iter:
                raise RuntimeError(f"simplex exceeded {self.max_iter} iterations")
            if rule == "bland":
                c = k.entering_bland(cost, allowed, PIVOT_TOL)
            else:
                c = k.entering_dantzig(cost, allowed, PIVOT_TOL)
            if c < 0:
                return OPTIMAL
            r = k.ratio_test(T, c, basis, PIVOT_TOL, rule == "bland")
            if r < 0:
                return UNBOUNDED
            degenerate = T[r, -1] <= PIVOT_TOL
            k.pivot(T, cost, r, c)
            basis[r] = c
            self.iterations += 1
            if degenerate:
                stall += 1
                if rule == "dantzig" and stall > STALL_LIMIT:
                    logger.debug("phase %d: stalled, switching to Bland's rule", phase)
                    rule = "bland"
            else:
                stall = 0

    def solve(self) -> LpOutcome:
        if self._used:
            raise RuntimeError("SimplexSolver instances are single-use")
        self._used = True
        T, basis = self._build()
        m, width = T.shape
        ny, m_ub, n_art = self.ny, self.m_ub, self.n_art
        n_cols = width - 1

        if n_art:
            cost = np.zeros(width)
            art_rows = np.flatnonzero(basis >= ny + m_ub)
            cost -= T[art_rows].sum(axis=0)
            cost[ny + m_ub:n_cols] = 0.0
            allowed = np.ones(n_cols, dtype=np.uint8)
            self._run(T, cost, basis, allowed, phase=1)
            if -cost[-1] > EPS_LP:
                return LpOutcome(INFEASIBLE, iterations=self.iterations)
            T, basis = self._drive_out_artificials(T, cost, basis)

        cost = np.zeros(T.shape[1])
        cost[:ny] = self.form.cost
        for i, b in enumerate(basis):
            f = cost[b]
            if f != 0.0:
                cost -= f * T[i]
        allowed = np.ones(T.shape[1] - 1, dtype=np.uint8)
        status = self._run(T, cost, basis, allowed, phase=2)
        if status == UNBOUNDED:
            return LpOutcome(UNBOUNDED, iterations=self.iterations)

        y = np.zeros(T.shape[1] - 1)
        y[basis] = T[:, -1]
        z = self.form.recover(y[:ny])
        obj = float(self.lp.objective @ z)
        viol = self.lp.violation(z)
        if viol > 1e-7 * max(1.0, float(np.max(np.abs(z), initial=0.0))):
            raise NumericalError(f"optimal basis violates constraints by {viol:.3g}")
        return LpOutcome(
            OPTIMAL,
            solution=z,
            objective_value=obj,
            iterations=self.iterations,
            max_violation=viol,
        )

    def _drive_out_artificials(self, T, cost, basis):
        first_art = self.ny + self.m_ub
        keep_rows = []
        for r in range(T.shape[0]):
            if basis[r] < first_art:
                keep_rows.append(r)
                continue
            row = T[r, :first_art]
            cand = np.flatnonzero(np.abs(row) > PIVOT_TOL)
            if cand.size == 0:
                continue  # redundant equality
            c = int(cand[np.argmax(np.abs(row[cand]))])
            self.kernels.pivot(T, cost, r, c)
            basis[r] = c
            keep_rows.append(r)
        cols = np.r_[np.arange(first_art), T.shape[1] - 1]
        T = np.ascontiguousarray(T[np.ix_(keep_rows, cols)])
        return T, np.ascontiguousarray(basis[keep_rows])


def solve_lp(lp: LinearProgram, rule: str = "dantzig", backend: str | None = None) -> LpOutcome:
    """Solve ``lp`` with a fresh two-phase simplex instance."""
    return SimplexSolver(lp, rule=rule, backend=backend).solve()
