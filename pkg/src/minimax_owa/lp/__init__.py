"""Dense two-phase simplex used by both disparity formulations."""
from .kernels import DEFAULT_BACKEND, have_compiled
from .simplex import (
    EPS_LP,
    INFEASIBLE,
    OPTIMAL,
    UNBOUNDED,
    LinearProgram,
    LpOutcome,
    MalformedProblemError,
    NumericalError,
    SimplexSolver,
    solve_lp,
)

__all__ = [
    "DEFAULT_BACKEND",
    "EPS_LP",
    "INFEASIBLE",
    "OPTIMAL",
    "UNBOUNDED",
    "LinearProgram",
    "LpOutcome",
    "MalformedProblemError",
    "NumericalError",
    "SimplexSolver",
    "have_compiled",
    "solve_lp",
]
