"""Model primitives and steady-state Riccati gains.

The single-agent problem behind the mean-field game is scalar discounted
linear-quadratic tracking: state z_{t+1} = a z_t + b u_t + w_t, stage cost
c_z (z_t - x_t)^2 + c_u u_t^2 with discount gamma, where x is a bounded
reference signal. The steady-state Riccati value p is the positive root of

    p^2 + alpha p - beta = 0,
    alpha = c_u (1 - gamma a^2) / (gamma b^2) - c_z,
    beta  = c_z c_u / (gamma b^2),

from which the control gain g_p, the closed-loop coefficient h_p and the
sup-norm contraction modulus T_p of the mean-field update follow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    AssumptionViolated,
    DiscountOutOfRange,
    NegativeNoiseScale,
    NegativeVariance,
    NonFiniteParameter,
    NonpositiveCostWeight,
    ZeroControlCoefficient,
)

_PARAM_FIELDS = ("a", "b", "c_z", "c_u", "gamma", "nu0", "sigma0_sq", "sigma_w")


@dataclass(frozen=True)
class ModelParams:
    """Scalar primitives of the discounted linear-quadratic game."""

    a: float
    b: float
    c_z: float
    c_u: float
    gamma: float
    nu0: float
    sigma0_sq: float
    sigma_w: float


@dataclass(frozen=True)
class RiccatiGains:
    """Steady-state value p and the constants it induces.

    g_p is the stationary control gain, h_p = a (1 + b p g_p) the closed-loop
    state coefficient, and T_p the sup-norm Lipschitz modulus of the
    mean-field update operator. alpha and beta are the coefficients of the
    model's steady-state quadratic; they describe the model, so gains built
    from an externally supplied p (see gains_from_p) need not satisfy
    p^2 + alpha p - beta = 0.
    """

    params: ModelParams
    p: float
    g_p: float
    h_p: float
    T_p: float
    alpha: float
    beta: float


@dataclass(frozen=True)
class ContractionCheck:
    holds: bool
    T_p: float


def validate_params(params: ModelParams) -> ModelParams:
    """Return the params unchanged, or raise the named admissibility violation."""
    for name in _PARAM_FIELDS:
        value = getattr(params, name)
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise NonFiniteParameter(f"{name} must be a real number, got {value!r}")
        if not math.isfinite(value):
            raise NonFiniteParameter(f"{name} must be finite, got {value!r}")
    if params.b == 0.0:
        raise ZeroControlCoefficient("control coefficient b must be nonzero")
    if params.c_z <= 0.0:
        raise NonpositiveCostWeight(f"state cost weight c_z must be positive, got {params.c_z}")
    if params.c_u <= 0.0:
        raise NonpositiveCostWeight(f"control cost weight c_u must be positive, got {params.c_u}")
    if not 0.0 <= params.gamma < 1.0:
        raise DiscountOutOfRange(f"discount factor must lie in [0, 1), got {params.gamma}")
    if params.sigma0_sq < 0.0:
        raise NegativeVariance(f"initial variance must be nonnegative, got {params.sigma0_sq}")
    if params.sigma_w < 0.0:
        raise NegativeNoiseScale(f"noise scale must be nonnegative, got {params.sigma_w}")
    return params


def quadratic_coefficients(params: ModelParams) -> tuple[float, float]:
    """Coefficients (alpha, beta) of the steady-state quadratic. Requires gamma > 0."""
    a, b, c_z, c_u, gamma = params.a, params.b, params.c_z, params.c_u, params.gamma
    gb2 = gamma * b * b
    alpha = c_u * (1.0 - gamma * a * a) / gb2 - c_z
    beta = c_z * c_u / gb2
    return alpha, beta


def gains_from_p(params: ModelParams, p: float) -> RiccatiGains:
    """Derive (g_p, h_p, T_p) from a given steady-state value p.

    p is taken at face value; it is not required to solve the quadratic.
    Useful for cross-checks against published constants and for sensitivity
    probes with perturbed values.
    """
    validate_params(params)
    a, b, c_z, c_u, gamma = params.a, params.b, params.c_z, params.c_u, params.gamma
    g_p = -gamma * b / (c_u + gamma * b * b * p)
    h_p = a * (1.0 + b * p * g_p)
    # Modulus of the update operator: the co-state sum converges absolutely,
    # so the geometric factor enters through gamma*|h_p|. A signed
    # denominator would understate the modulus whenever h_p < 0.
    denom = 1.0 - gamma * abs(h_p)
    T_p = abs(h_p) + abs(c_z * b * g_p) / denom if denom > 0.0 else math.inf
    if gamma == 0.0:
        alpha, beta = math.inf, math.inf
    else:
        alpha, beta = quadratic_coefficients(params)
    return RiccatiGains(params=params, p=float(p), g_p=g_p, h_p=h_p, T_p=T_p,
                        alpha=alpha, beta=beta)


def solve_riccati(params: ModelParams) -> RiccatiGains:
    """Closed-form steady-state gains for a validated model.

    The positive root is evaluated in the cancellation-free form, so the
    result stays accurate when alpha is large and positive (weak control
    authority). gamma = 0 collapses the recursion to its stage term: p = c_z
    with zero control gain, and the quadratic coefficients diverge.
    """
    validate_params(params)
    c_z, gamma = params.c_z, params.gamma
    if gamma == 0.0:
        return RiccatiGains(params=params, p=c_z, g_p=0.0, h_p=params.a,
                            T_p=abs(params.a), alpha=math.inf, beta=math.inf)
    if params.a == 0.0:
        # the root reduces to exactly c_z; bypass the radical to keep it exact
        return gains_from_p(params, c_z)
    alpha, beta = quadratic_coefficients(params)
    disc = math.hypot(alpha, 2.0 * math.sqrt(beta))
    p = 2.0 * beta / (alpha + disc) if alpha > 0.0 else 0.5 * (disc - alpha)
    return gains_from_p(params, p)


def check_contraction(gains: RiccatiGains) -> ContractionCheck:
    """Report whether the mean-field update is a sup-norm contraction (T_p < 1)."""
    return ContractionCheck(holds=gains.T_p < 1.0, T_p=gains.T_p)


def stopping_threshold(gains: RiccatiGains, eps_s: float) -> float:
    """Consecutive-iterate threshold eps_s (1 - T_p) / T_p guaranteeing final error < eps_s."""
    if eps_s <= 0.0:
        raise ValueError(f"eps_s must be positive, got {eps_s}")
    if gains.T_p >= 1.0:
        raise AssumptionViolated(
            f"contraction modulus T_p = {gains.T_p} is not below 1; no stopping rule exists")
    if gains.T_p <= 0.0:
        raise ValueError("threshold undefined for T_p = 0 (the update maps everything to its fixed point)")
    return eps_s * (1.0 - gains.T_p) / gains.T_p


def iteration_bound(gains: RiccatiGains, eps_s: float, initial_gap: float) -> int:
    """Iteration count K after which the iterate is within eps_s of the fixed point.

    K = ceil((log eps_s - log initial_gap) / log T_p), where initial_gap is
    the sup distance from the starting sequence to the fixed point.
    """
    if eps_s <= 0.0 or initial_gap <= 0.0:
        raise ValueError("eps_s and initial_gap must be positive")
    if gains.T_p >= 1.0:
        raise AssumptionViolated(
            f"contraction modulus T_p = {gains.T_p} is not below 1; no finite bound exists")
    if gains.T_p <= 0.0:
        raise ValueError("bound undefined for T_p = 0")
    return math.ceil((math.log(eps_s) - math.log(initial_gap)) / math.log(gains.T_p))
