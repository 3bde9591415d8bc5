"""Generic-agent best response: co-states, the control law, and its expected cost.

For a tracked sequence x the co-state is the discounted forward-looking sum

    lambda_t = -c_z * sum_{s >= 0} (gamma h_p)^s x_{t+s},

equivalently the backward recursion lambda_t = gamma h_p lambda_{t+1} - c_z x_t.
On a head-plus-geometric-tail sequence the tail collapses to a closed form, so
lambda_t is computable in finite work at every t. The optimal stationary
control is u_t(z) = g_p (a p z + lambda_{t+1}).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from .errors import AssumptionViolated, DegenerateDenominator
from .model import RiccatiGains
from .sequence import TailGeometricSeq

DENOM_TOL = 1e-12


def _tail_denominator(gains: RiccatiGains, r: float) -> float:
    d = 1.0 - gains.params.gamma * gains.h_p * r
    if abs(d) <= DENOM_TOL:
        raise DegenerateDenominator(
            f"1 - gamma h_p r = {d} is numerically zero; the tail sum is undefined")
    return d


def _require_stable(gains: RiccatiGains) -> float:
    ghp = gains.params.gamma * gains.h_p
    if abs(ghp) >= 1.0:
        raise AssumptionViolated(
            f"co-state series requires gamma |h_p| < 1, got {abs(ghp)}")
    return ghp


@dataclass(frozen=True)
class ControlPolicy:
    """A mean-field trajectory plus gains; together they induce the control law."""

    mean_field: TailGeometricSeq
    gains: RiccatiGains

    def __post_init__(self):
        _require_stable(self.gains)
        _tail_denominator(self.gains, self.mean_field.r)


def costate(seq: TailGeometricSeq, gains: RiccatiGains, t: int) -> float:
    """lambda_t for the tracked sequence, evaluated in closed form."""
    if t < 0:
        raise ValueError(f"co-state index must be nonnegative, got {t}")
    ghp = _require_stable(gains)
    denom = _tail_denominator(gains, seq.r)
    c_z = gains.params.c_z
    tau = seq.tail_start
    if t >= tau:
        return -c_z * seq.value(t) / denom
    # finite sum over the remaining head, then the geometric tail in closed form
    k = tau - t
    weights = ghp ** np.arange(k)
    head_part = float(np.dot(weights, seq.head[t:tau]))
    return -c_z * (head_part + ghp ** k * float(seq.head[tau]) / denom)


def costate_profile(seq: TailGeometricSeq, gains: RiccatiGains, n: int) -> np.ndarray:
    """lambda_0 .. lambda_{n-1} in one pass.

    The value at the tail start is exact in closed form; the head section then
    follows the backward recursion lambda_t = gamma h_p lambda_{t+1} - c_z x_t,
    which is a first-order linear filter over the reversed head.
    """
    ghp = _require_stable(gains)
    denom = _tail_denominator(gains, seq.r)
    c_z = gains.params.c_z
    tau = seq.tail_start
    m = max(n, tau + 1)
    vals = seq.values(m)
    lam = np.empty(m, dtype=float)
    lam[tau:] = -c_z * vals[tau:] / denom
    if tau > 0:
        anchor = lam[tau]
        y, _ = lfilter([-c_z], [1.0, -ghp], vals[tau - 1::-1], zi=[ghp * anchor])
        lam[:tau] = y[::-1]
    return lam[:n]


def control_action(policy: ControlPolicy, z: float, t: int) -> float:
    """Optimal control at time t in state z, tracking the policy's mean field."""
    if t < 0:
        raise ValueError(f"time index must be nonnegative, got {t}")
    gains = policy.gains
    lam_next = costate(policy.mean_field, gains, t + 1)
    return gains.g_p * (gains.params.a * gains.p * z + lam_next)


def evaluate_cost(policy: ControlPolicy, target: TailGeometricSeq,
                  tail_tol: float = 1e-9) -> float:
    """Expected discounted cost of playing the policy against a tracked target.

    The closed-loop state is Gaussian with moments following linear recursions

        m_{t+1} = h_p m_t + b g_p lambda_{t+1},    m_0 = nu0,
        v_{t+1} = h_p^2 v_t + sigma_w^2,           v_0 = sigma0_sq,

    so each stage cost is available in closed form. The infinite sum is
    truncated once a conservative geometric bound on the remainder falls
    below tail_tol.
    """
    if tail_tol <= 0.0:
        raise ValueError(f"tail_tol must be positive, got {tail_tol}")
    gains = policy.gains
    params = gains.params
    if gains.T_p >= 1.0:
        raise AssumptionViolated(
            f"cost evaluation requires T_p < 1, got {gains.T_p}")
    a, b, c_z, c_u, gamma = params.a, params.b, params.c_z, params.c_u, params.gamma

    # conservative sup bounds on every term entering the stage cost
    h_abs = abs(gains.h_p)
    ghp_abs = gamma * h_abs
    lam_bound = c_z * policy.mean_field.bound() / (1.0 - ghp_abs)
    m_bound = abs(params.nu0) + abs(b * gains.g_p) * lam_bound / (1.0 - h_abs)
    v_bound = params.sigma0_sq + params.sigma_w ** 2 / (1.0 - gains.h_p ** 2)
    u_bound = abs(gains.g_p) * (abs(a * gains.p) * m_bound + lam_bound)
    u_state = gains.g_p * a * gains.p  # control response to the agent's own state
    step_bound = (c_z * (v_bound + (m_bound + target.bound()) ** 2)
                  + c_u * (u_state ** 2 * v_bound + u_bound ** 2))
    if step_bound == 0.0:
        return 0.0
    if gamma == 0.0:
        n_terms = 1
    else:
        # smallest T with step_bound * gamma^T / (1 - gamma) < tail_tol
        n_terms = max(1, math.ceil(
            math.log(tail_tol * (1.0 - gamma) / step_bound) / math.log(gamma)))

    lam = costate_profile(policy.mean_field, gains, n_terms + 1)
    tgt = target.values(n_terms)
    m = params.nu0
    v = params.sigma0_sq
    total = 0.0
    disc = 1.0
    for t in range(n_terms):
        u_mean = gains.g_p * (a * gains.p * m + lam[t + 1])
        total += disc * (c_z * (v + (m - tgt[t]) ** 2)
                         + c_u * (u_state ** 2 * v + u_mean ** 2))
        m = gains.h_p * m + b * gains.g_p * lam[t + 1]
        v = gains.h_p ** 2 * v + params.sigma_w ** 2
        disc *= gamma
    return total
