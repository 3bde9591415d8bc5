"""HTTP service exposing the solver and simulator.

Thin request/response layer over the library: endpoints validate the model,
run the requested computation, and return plain data. Domain violations map
to 422 (inadmissible parameters or inputs) and 409 (contraction condition
fails, so the requested computation is not defined).
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import __version__
from .errors import AssumptionViolated, DegenerateDenominator, ModelValidationError
from .control import ControlPolicy
from .iteration import IterationConfig, run_policy_iteration
from .model import (
    ModelParams,
    RiccatiGains,
    check_contraction,
    gains_from_p,
    iteration_bound,
    solve_riccati,
)
from .schemas import (
    BoundRequest,
    BoundResponse,
    GainsDoc,
    GainsOut,
    IterateBlock,
    ModelSpec,
    PolicyDoc,
    PopulationBlock,
    SimulateRequest,
    SimulateResponse,
    SolveRequest,
    SolveResponse,
    SolveSummary,
    ValidateRequest,
    ValidateResponse,
)
from .sequence import TailGeometricSeq
from .simulate import PopulationConfig, default_horizon, simulate_population

app = FastAPI(title="LQ mean-field game solver", version=__version__)


def _solve_gains(model: ModelSpec) -> tuple[ModelParams, RiccatiGains]:
    try:
        params = model.to_params()
        gains = solve_riccati(params)
    except ModelValidationError as exc:
        raise HTTPException(status_code=422, detail={
            "violation": type(exc).__name__, "message": str(exc)})
    return params, gains


def _require_contraction(gains: RiccatiGains) -> None:
    if not check_contraction(gains).holds:
        raise HTTPException(status_code=409, detail={
            "violation": "AssumptionViolated",
            "message": f"contraction modulus T_p = {gains.T_p} is not below 1",
            "T_p": gains.T_p})


def _policy_from_doc(params: ModelParams, doc: PolicyDoc) -> ControlPolicy:
    try:
        gains = gains_from_p(params, doc.gains.p)
        # keep the documented gains verbatim; they round-trip through files
        gains = RiccatiGains(params=params, p=doc.gains.p, g_p=doc.gains.g_p,
                             h_p=doc.gains.h_p, T_p=doc.gains.T_p,
                             alpha=gains.alpha, beta=gains.beta)
        seq = TailGeometricSeq(head=doc.head, r=doc.r)
        return ControlPolicy(mean_field=seq, gains=gains)
    except (ValueError, AssumptionViolated, DegenerateDenominator) as exc:
        raise HTTPException(status_code=422, detail={
            "violation": type(exc).__name__, "message": str(exc)})


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/validate", response_model=ValidateResponse)
def validate(req: ValidateRequest) -> ValidateResponse:
    _, gains = _solve_gains(req.model)
    return ValidateResponse(
        gains=GainsOut(p=gains.p, g_p=gains.g_p, h_p=gains.h_p, T_p=gains.T_p,
                       alpha=gains.alpha, beta=gains.beta),
        contraction_holds=check_contraction(gains).holds,
    )


@app.post("/solve", response_model=SolveResponse)
def solve(req: SolveRequest) -> SolveResponse:
    params, gains = _solve_gains(req.model)
    _require_contraction(gains)
    try:
        config = IterationConfig(
            eps_s=req.solver.epsilon_s,
            r=req.solver.r,
            init_head=tuple(req.solver.init_head) if req.solver.init_head else None,
            max_iter=req.solver.max_iter,
            keep_iterates=req.solver.keep == "all",
        )
        trace = run_policy_iteration(params, gains, config)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail={
            "violation": type(exc).__name__, "message": str(exc)})
    final = trace.final
    return SolveResponse(
        policy=PolicyDoc(
            head=[float(x) for x in final.head],
            r=final.r,
            gains=GainsDoc(p=gains.p, g_p=gains.g_p, h_p=gains.h_p, T_p=gains.T_p),
        ),
        summary=SolveSummary(
            k_star=trace.k_star,
            final_delta=float(trace.deltas[-1]),
            threshold=trace.threshold,
            terminated_by=trace.terminated_by.value,
        ),
        iterates=[
            IterateBlock(iteration=num, head=[float(x) for x in it.head])
            for num, it in zip(trace.iterate_numbers, trace.iterates)
        ],
    )


@app.post("/simulate", response_model=SimulateResponse)
def simulate(req: SimulateRequest) -> SimulateResponse:
    params, _ = _solve_gains(req.model)
    policy = _policy_from_doc(params, req.policy)
    horizon = req.simulation.horizon
    if horizon is None:
        horizon = default_horizon(params.gamma)
    blocks = []
    for n_agents in req.simulation.n_values():
        try:
            cfg = PopulationConfig(n_agents=n_agents, horizon=horizon,
                                   replications=req.simulation.replications,
                                   seed=req.simulation.seed)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail={
                "violation": type(exc).__name__, "message": str(exc)})
        result = simulate_population(policy, params, cfg, workers=req.workers)
        blocks.append(PopulationBlock(
            N=n_agents,
            per_agent_costs=result.per_agent_costs.tolist(),
            empirical_mean_paths=result.empirical_mean_paths.tolist(),
            avg_cost=result.avg_cost,
        ))
    return SimulateResponse(blocks=blocks)


@app.post("/bound", response_model=BoundResponse)
def bound(req: BoundRequest) -> BoundResponse:
    _, gains = _solve_gains(req.model)
    _require_contraction(gains)
    try:
        k = iteration_bound(gains, req.epsilon, req.initial_gap)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail={
            "violation": type(exc).__name__, "message": str(exc)})
    return BoundResponse(iterations=k, T_p=gains.T_p)
