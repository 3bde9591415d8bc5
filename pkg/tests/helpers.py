"""Shared fixtures data and samplers for the test suite."""

from __future__ import annotations

import numpy as np

from lqmfg import ModelParams, RiccatiGains, TailGeometricSeq, solve_riccati

# Benchmark model (same values as configs/benchmark.json). Gains frozen from
# this library's closed form and cross-checked against the backward-recursion
# oracle in test_model/test_acceptance:
#   p = 0.6908885267668523, g_p = -0.33866954822931034,
#   h_p = 0.9262645152799535, T_p = 0.9881262384395124
BENCH = ModelParams(a=1.1315, b=0.7752, c_z=0.0392, c_u=1.6864,
                    gamma=0.9, nu0=20.0, sigma0_sq=1.0, sigma_w=0.03)

# a = 0 makes everything exact by hand: p = c_z = 1, g_p = -1/3, h_p = 0,
# T_p = 1/3, and the co-state collapses to a single term.
TOY = ModelParams(a=0.0, b=1.0, c_z=1.0, c_u=1.0, gamma=0.5,
                  nu0=2.0, sigma0_sq=0.0, sigma_w=0.0)

# Strong instability with weak control authority; T_p comes out near 1.67,
# so the contraction condition fails while sqrt(gamma) |h_p| < 1 still holds.
VIOLATING = ModelParams(a=3.0, b=0.05, c_z=1.0, c_u=1.0, gamma=0.2,
                        nu0=1.0, sigma0_sq=0.5, sigma_w=0.1)


def sample_params(rng: np.random.Generator) -> ModelParams:
    """Random admissible model; ranges keep the recursion oracles fast."""
    return ModelParams(
        a=float(rng.uniform(-2.0, 2.0)),
        b=float(rng.choice([-1.0, 1.0]) * rng.uniform(0.1, 2.0)),
        c_z=float(rng.uniform(0.01, 5.0)),
        c_u=float(rng.uniform(0.01, 5.0)),
        gamma=float(rng.uniform(0.05, 0.97)),
        nu0=float(rng.uniform(-10.0, 10.0)),
        sigma0_sq=float(rng.uniform(0.0, 4.0)),
        sigma_w=float(rng.uniform(0.0, 1.0)),
    )


def sample_contractive(rng: np.random.Generator) -> tuple[ModelParams, RiccatiGains]:
    """Random model whose update operator is a contraction (T_p < 1)."""
    while True:
        params = sample_params(rng)
        gains = solve_riccati(params)
        if gains.T_p < 1.0:
            return params, gains


def sample_seq(rng: np.random.Generator, r: float | None = None,
               max_head: int = 8) -> TailGeometricSeq:
    if r is None:
        r = float(rng.uniform(-1.0, 1.0))
    n = int(rng.integers(1, max_head + 1))
    return TailGeometricSeq(head=rng.uniform(-10.0, 10.0, n), r=r)


def lookahead(t: int, seq: TailGeometricSeq, gains: RiccatiGains) -> float:
    """Branchwise finite lookahead; an independent expression of -lambda_{t+1}/c_z.

    Transcribed term by term from the forward-in-time control formula, with
    the tail ratio in the t >= k branch read as the plain scalar r."""
    k = seq.tail_start
    ghp = gains.params.gamma * gains.h_p
    r = seq.r
    z = seq.head
    if t < k:
        q = sum(ghp ** s * z[t + 1 + s] for s in range(k - t))
        return ghp ** (k - t) * r * z[k] / (1.0 - ghp * r) + q
    return r ** (t - k + 1) * z[k] / (1.0 - ghp * r)
