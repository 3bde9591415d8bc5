"""Transparent finite-horizon recursions used as independent oracles.

These deliberately avoid the closed forms in the rest of the library: the
Riccati value, co-state, and control gain are produced by literal backward
recursions from a terminal condition, and the co-state alternative is a
literal truncated sum. Tests compare the closed forms against these. Nothing
here is optimized; transparency is the point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ModelParams, RiccatiGains, validate_params
from .sequence import TailGeometricSeq


@dataclass(frozen=True)
class BackwardSweep:
    """All intermediate values of the backward recursions, index 0 .. horizon."""

    p_t: np.ndarray
    lambda_t: np.ndarray
    u_gain_t: np.ndarray  # feedback gain on the current state; length horizon


def backward_sweep(params: ModelParams, target: TailGeometricSeq, horizon: int,
                   terminal_p: float = 0.0, terminal_lambda: float = 0.0) -> BackwardSweep:
    """Run the time-varying Riccati, co-state, and gain recursions backward.

    p_t  = gamma a^2 p_{t+1} + c_z - gamma^2 a^2 b^2 p_{t+1}^2 / (c_u + gamma b^2 p_{t+1})
    l_t  = gamma a (1 - gamma p_{t+1} b^2 / (c_u + gamma b^2 p_{t+1})) l_{t+1} - c_z x_t
    u_t  = -gamma b (p_{t+1} a z_t + l_{t+1}) / (c_u + gamma b^2 p_{t+1})

    u_gain_t stores the coefficient of z_t in u_t; the affine part is
    recoverable from lambda_t and p_t.
    """
    validate_params(params)
    if horizon < 1:
        raise ValueError(f"horizon must be at least 1, got {horizon}")
    a, b, c_z, c_u, gamma = params.a, params.b, params.c_z, params.c_u, params.gamma
    p = np.empty(horizon + 1)
    lam = np.empty(horizon + 1)
    u_gain = np.empty(horizon)
    p[horizon] = terminal_p
    lam[horizon] = terminal_lambda
    for t in range(horizon - 1, -1, -1):
        denom = c_u + gamma * b * b * p[t + 1]
        p[t] = gamma * a * a * p[t + 1] + c_z \
            - gamma ** 2 * a ** 2 * b ** 2 * p[t + 1] ** 2 / denom
        lam[t] = gamma * a * (1.0 - gamma * p[t + 1] * b * b / denom) * lam[t + 1] \
            - c_z * target.value(t)
        u_gain[t] = -gamma * b * p[t + 1] * a / denom
    return BackwardSweep(p_t=p, lambda_t=lam, u_gain_t=u_gain)


def costate_truncated(seq: TailGeometricSeq, gains: RiccatiGains, t: int,
                      M: int) -> float:
    """Literal partial sum -c_z sum_{s<M} (gamma h_p)^s x_{t+s}."""
    if t < 0:
        raise ValueError(f"co-state index must be nonnegative, got {t}")
    if M < 1:
        raise ValueError(f"term count M must be at least 1, got {M}")
    params = gains.params
    ghp = params.gamma * gains.h_p
    total = 0.0
    for s in range(M):
        total += ghp ** s * seq.value(t + s)
    return -params.c_z * total
