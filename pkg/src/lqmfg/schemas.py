"""Wire and file schemas: experiment config, policy document, service payloads."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from .model import ModelParams


class ModelSpec(BaseModel):
    """The "model" object of a config file."""

    model_config = ConfigDict(extra="forbid")

    a: float
    b: float
    c_z: float
    c_u: float
    gamma: float
    nu0: float
    sigma0_sq: float
    sigma_w: float

    def to_params(self) -> ModelParams:
        return ModelParams(**self.model_dump())


class SolverSpec(BaseModel):
    """The "solver" object of a config file."""

    model_config = ConfigDict(extra="forbid")

    r: float
    epsilon_s: float
    max_iter: int = 100000
    init_head: list[float] | None = None
    keep: Literal["all", "last"] = "all"


class SimulationSpec(BaseModel):
    """The "simulation" object of a config file; N may be a sweep list."""

    model_config = ConfigDict(extra="forbid")

    N: int | list[int]
    horizon: int | None = None
    replications: int = 20
    seed: int = 0

    def n_values(self) -> list[int]:
        return self.N if isinstance(self.N, list) else [self.N]


class ExperimentConfig(BaseModel):
    """One config file: model always, solver/simulation when the command needs them."""

    model_config = ConfigDict(extra="forbid")

    model: ModelSpec
    solver: SolverSpec | None = None
    simulation: SimulationSpec | None = None


class GainsDoc(BaseModel):
    """Gains block of policy.json."""

    model_config = ConfigDict(extra="forbid")

    p: float
    g_p: float
    h_p: float
    T_p: float


class PolicyDoc(BaseModel):
    """policy.json: the solved mean-field parameters plus gains."""

    model_config = ConfigDict(extra="forbid")

    head: list[float]
    r: float
    gains: GainsDoc


class GainsOut(BaseModel):
    p: float
    g_p: float
    h_p: float
    T_p: float
    alpha: float
    beta: float


class ValidateRequest(BaseModel):
    model: ModelSpec


class ValidateResponse(BaseModel):
    gains: GainsOut
    contraction_holds: bool


class SolveRequest(BaseModel):
    model: ModelSpec
    solver: SolverSpec


class SolveSummary(BaseModel):
    k_star: int
    final_delta: float
    threshold: float
    terminated_by: str


class IterateBlock(BaseModel):
    iteration: int
    head: list[float]


class SolveResponse(BaseModel):
    policy: PolicyDoc
    summary: SolveSummary
    iterates: list[IterateBlock]


class SimulateRequest(BaseModel):
    model: ModelSpec
    simulation: SimulationSpec
    policy: PolicyDoc
    workers: int = Field(default=1, ge=1)


class PopulationBlock(BaseModel):
    N: int
    per_agent_costs: list[list[float]]
    empirical_mean_paths: list[list[float]]
    avg_cost: float


class SimulateResponse(BaseModel):
    blocks: list[PopulationBlock]


class BoundRequest(BaseModel):
    model: ModelSpec
    epsilon: float
    initial_gap: float


class BoundResponse(BaseModel):
    iterations: int
    T_p: float
