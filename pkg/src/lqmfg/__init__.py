"""Solver and validator for discounted linear-quadratic mean-field games.

The library computes an approximate mean-field equilibrium by iterating the
mean-field consistency update over head-plus-geometric-tail sequences, and
validates the result with finite-population Monte Carlo simulation.
"""

__version__ = "0.1.0"

from .errors import (
    AssumptionViolated,
    DegenerateDenominator,
    DiscountOutOfRange,
    IndexOutOfRange,
    ModelValidationError,
    NegativeNoiseScale,
    NegativeVariance,
    NonFiniteParameter,
    NonpositiveCostWeight,
    RatioMismatch,
    ZeroControlCoefficient,
)
from .model import (
    ContractionCheck,
    ModelParams,
    RiccatiGains,
    check_contraction,
    gains_from_p,
    iteration_bound,
    quadratic_coefficients,
    solve_riccati,
    stopping_threshold,
    validate_params,
)
from .sequence import TailGeometricSeq, sup_distance
from .control import (
    ControlPolicy,
    control_action,
    costate,
    costate_profile,
    evaluate_cost,
)
from .mean_field import (
    contraction_estimate,
    contraction_ratio,
    direct_truncation_bound,
    direct_truncation_terms,
    tail_update_rate,
    update_mean_field,
    update_mean_field_direct,
)
from .iteration import (
    CertificationReport,
    IterationConfig,
    IterationTrace,
    Termination,
    certify,
    run_policy_iteration,
)
from .simulate import (
    CostEstimate,
    PopulationConfig,
    PopulationResult,
    default_horizon,
    empirical_mean_path,
    simulate_generic_agent,
    simulate_population,
)
from .reference import BackwardSweep, backward_sweep, costate_truncated
from .rng import INITIAL_STATE, PROCESS_NOISE, substream

__all__ = [
    "__version__",
    "AssumptionViolated",
    "BackwardSweep",
    "CertificationReport",
    "ContractionCheck",
    "ControlPolicy",
    "CostEstimate",
    "DegenerateDenominator",
    "INITIAL_STATE",
    "DiscountOutOfRange",
    "IndexOutOfRange",
    "IterationConfig",
    "IterationTrace",
    "ModelParams",
    "ModelValidationError",
    "NegativeNoiseScale",
    "NegativeVariance",
    "NonFiniteParameter",
    "NonpositiveCostWeight",
    "PopulationConfig",
    "PopulationResult",
    "PROCESS_NOISE",
    "RatioMismatch",
    "RiccatiGains",
    "TailGeometricSeq",
    "Termination",
    "ZeroControlCoefficient",
    "backward_sweep",
    "certify",
    "check_contraction",
    "contraction_estimate",
    "contraction_ratio",
    "control_action",
    "costate",
    "costate_profile",
    "costate_truncated",
    "default_horizon",
    "direct_truncation_bound",
    "direct_truncation_terms",
    "empirical_mean_path",
    "evaluate_cost",
    "gains_from_p",
    "iteration_bound",
    "quadratic_coefficients",
    "run_policy_iteration",
    "simulate_generic_agent",
    "simulate_population",
    "solve_riccati",
    "stopping_threshold",
    "substream",
    "sup_distance",
    "tail_update_rate",
    "update_mean_field",
    "update_mean_field_direct",
    "validate_params",
]
