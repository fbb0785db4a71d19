"""Minimax disparity OWA weights via the binomial decomposition."""
__version__ = "0.1.0"

from .combinatorics import (
    BinomialWeightMatrix,
    binomial,
    binomial_weight,
    weight_matrix,
    weight_row,
)
from .decomposition import (
    AlphaVector,
    ConsistencyError,
    FeasibilityReport,
    InfeasibleAlphaError,
    alpha_to_weights,
    binomial_orness,
    check_alpha_feasibility,
    orness_from_alpha,
    weights_to_alpha,
)
from .lp import LinearProgram, LpOutcome, solve_lp
from .models import (
    ALPHA_SPACE,
    WEIGHT_SPACE,
    DisparitySolution,
    KCurvePoint,
    build_alpha_model,
    build_weight_model,
    kcurve,
    solve_minimax_disparity,
    sweep,
)
from .owa import (
    EPS_FEAS,
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
