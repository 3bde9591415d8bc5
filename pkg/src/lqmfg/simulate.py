"""Finite-population simulation and generic-agent Monte Carlo.

All N agents play the same decentralized policy computed for the infinite
population; the coupling cost charges each agent's deviation from the
empirical mean of the other N-1 agents. Costs are discounted and truncated
at a horizon with a geometric tail bound. Runs are deterministic given the
seed, independent of worker count: every (replication, agent) pair owns
keyed noise substreams and results are assembled in fixed index order.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .control import ControlPolicy, costate_profile
from .errors import IndexOutOfRange
from .model import ModelParams, validate_params
from .rng import INITIAL_STATE, PROCESS_NOISE, substream
from .sequence import TailGeometricSeq

_MAX_SEED = 2 ** 64


@dataclass(frozen=True)
class PopulationConfig:
    """Finite-population run settings."""

    n_agents: int
    horizon: int
    replications: int
    seed: int

    def __post_init__(self):
        if self.n_agents < 2:
            raise ValueError(f"need at least 2 agents for the coupling term, got {self.n_agents}")
        if self.horizon < 1:
            raise ValueError(f"horizon must be at least 1, got {self.horizon}")
        if self.replications < 1:
            raise ValueError(f"replications must be at least 1, got {self.replications}")
        if not 0 <= self.seed < _MAX_SEED:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")


@dataclass(frozen=True)
class PopulationResult:
    """Immutable outcome of a population run."""

    per_agent_costs: np.ndarray       # replications x n_agents
    empirical_mean_paths: np.ndarray  # replications x (horizon + 1)
    avg_cost: float

    def __post_init__(self):
        for name in ("per_agent_costs", "empirical_mean_paths"):
            arr = getattr(self, name)
            arr = np.asarray(arr, dtype=float)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)


@dataclass(frozen=True)
class CostEstimate:
    mean: float
    std_error: float


def default_horizon(gamma: float, tail: float = 1e-6) -> int:
    """Smallest horizon T with gamma^T < tail."""
    if not 0.0 <= gamma < 1.0:
        raise ValueError(f"discount factor must lie in [0, 1), got {gamma}")
    if gamma == 0.0:
        return 1
    return max(1, math.ceil(math.log(tail) / math.log(gamma)))


def _replication_paths(policy: ControlPolicy, params: ModelParams,
                       cfg: PopulationConfig, replication: int,
                       lam: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """States (horizon+1 x N) and controls (horizon+1 x N) for one replication."""
    n, horizon = cfg.n_agents, cfg.horizon
    gains = policy.gains
    sigma0 = math.sqrt(params.sigma0_sq)
    z0 = np.empty(n)
    noise = np.empty((horizon, n))
    for agent in range(n):
        z0[agent] = substream(cfg.seed, replication, agent, INITIAL_STATE).normal(
            params.nu0, sigma0)
        noise[:, agent] = substream(cfg.seed, replication, agent, PROCESS_NOISE).normal(
            0.0, params.sigma_w, horizon)
    states = np.empty((horizon + 1, n))
    controls = np.empty((horizon + 1, n))
    states[0] = z0
    for t in range(horizon + 1):
        controls[t] = gains.g_p * (params.a * gains.p * states[t] + lam[t + 1])
        if t < horizon:
            states[t + 1] = params.a * states[t] + params.b * controls[t] + noise[t]
    return states, controls


def _replication_run(policy: ControlPolicy, params: ModelParams,
                     cfg: PopulationConfig, replication: int,
                     lam: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    states, controls = _replication_paths(policy, params, cfg, replication, lam)
    n = cfg.n_agents
    c_z, c_u, gamma = params.c_z, params.c_u, params.gamma
    discounts = gamma ** np.arange(cfg.horizon + 1)
    costs = np.zeros(n)
    for t in range(cfg.horizon + 1):
        z = states[t]
        others_mean = (z.sum() - z) / (n - 1)
        costs += discounts[t] * (c_z * (z - others_mean) ** 2 + c_u * controls[t] ** 2)
    return costs, states.mean(axis=1)


def simulate_population(policy: ControlPolicy, params: ModelParams,
                        cfg: PopulationConfig, workers: int = 1) -> PopulationResult:
    """Simulate N agents under the shared policy; deterministic given cfg.seed.

    workers > 1 runs replications concurrently; results are identical to the
    sequential run because every stream is keyed and assembly order is fixed.
    """
    validate_params(params)
    if workers < 1:
        raise ValueError(f"workers must be at least 1, got {workers}")
    lam = costate_profile(policy.mean_field, policy.gains, cfg.horizon + 2)
    per_agent = np.empty((cfg.replications, cfg.n_agents))
    mean_paths = np.empty((cfg.replications, cfg.horizon + 1))

    def one(rep: int) -> tuple[np.ndarray, np.ndarray]:
        return _replication_run(policy, params, cfg, rep, lam)

    if workers == 1:
        results = map(one, range(cfg.replications))
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, range(cfg.replications)))
    for rep, (costs, mean_path) in enumerate(results):
        per_agent[rep] = costs
        mean_paths[rep] = mean_path

    return PopulationResult(per_agent_costs=per_agent,
                            empirical_mean_paths=mean_paths,
                            avg_cost=float(per_agent.mean()))


def simulate_generic_agent(policy: ControlPolicy, target: TailGeometricSeq,
                           params: ModelParams, n_paths: int, horizon: int,
                           seed: int) -> CostEstimate:
    """Monte Carlo estimate of the tracking cost of one agent against a fixed target."""
    validate_params(params)
    if n_paths < 1:
        raise ValueError(f"n_paths must be at least 1, got {n_paths}")
    if horizon < 1:
        raise ValueError(f"horizon must be at least 1, got {horizon}")
    gains = policy.gains
    lam = costate_profile(policy.mean_field, gains, horizon + 2)
    tgt = target.values(horizon + 1)
    sigma0 = math.sqrt(params.sigma0_sq)

    z = np.empty(n_paths)
    noise = np.empty((horizon, n_paths))
    for path in range(n_paths):
        z[path] = substream(seed, path, INITIAL_STATE).normal(params.nu0, sigma0)
        noise[:, path] = substream(seed, path, PROCESS_NOISE).normal(
            0.0, params.sigma_w, horizon)

    costs = np.zeros(n_paths)
    disc = 1.0
    for t in range(horizon + 1):
        u = gains.g_p * (params.a * gains.p * z + lam[t + 1])
        costs += disc * (params.c_z * (z - tgt[t]) ** 2 + params.c_u * u ** 2)
        if t < horizon:
            z = params.a * z + params.b * u + noise[t]
        disc *= params.gamma

    mean = float(costs.mean())
    std_error = float(costs.std(ddof=1) / math.sqrt(n_paths)) if n_paths > 1 else 0.0
    return CostEstimate(mean=mean, std_error=std_error)


def empirical_mean_path(result: PopulationResult, replication: int) -> np.ndarray:
    """The stored empirical mean path (1/N) sum_n z_t^n for one replication."""
    n_reps = result.empirical_mean_paths.shape[0]
    if not 0 <= replication < n_reps:
        raise IndexOutOfRange(
            f"replication {replication} outside stored range [0, {n_reps})")
    return result.empirical_mean_paths[replication].copy()
