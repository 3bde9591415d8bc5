"""Fixed-point iteration of the mean-field update, with stopping rule and audit.

Starting from a one-element head (nu0) with a chosen tail ratio, the update is
applied until consecutive iterates are within eps_s (1 - T_p) / T_p of each
other in sup norm. Contraction then guarantees the final iterate lies within
eps_s of the equilibrium mean field. certify() audits a finished trace against
an independent higher-precision reference run.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import AssumptionViolated
from .mean_field import update_mean_field
from .model import ModelParams, RiccatiGains, stopping_threshold, validate_params
from .sequence import TailGeometricSeq, sup_distance


class Termination(enum.Enum):
    STOPPING_RULE = "StoppingRule"
    MAX_ITER = "MaxIter"


@dataclass(frozen=True)
class IterationConfig:
    """Solver settings: target accuracy, tail ratio, optional start and caps."""

    eps_s: float
    r: float
    init_head: tuple[float, ...] | None = None
    max_iter: int = 100000
    keep_iterates: bool = True

    def __post_init__(self):
        if self.eps_s <= 0.0:
            raise ValueError(f"eps_s must be positive, got {self.eps_s}")
        if not abs(self.r) <= 1.0:
            raise ValueError(f"tail ratio must satisfy |r| <= 1, got {self.r}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be at least 1, got {self.max_iter}")
        if self.init_head is not None:
            object.__setattr__(self, "init_head", tuple(float(x) for x in self.init_head))


@dataclass(frozen=True)
class IterationTrace:
    """Everything a finished run exposes.

    iterates holds every iterate (including the start) when the run keeps
    full history, otherwise only the last two; iterate_numbers labels each
    retained iterate with its index. deltas[j] is the sup distance between
    iterates j and j+1, for all j < k_star regardless of retention mode.
    """

    iterates: tuple[TailGeometricSeq, ...]
    iterate_numbers: tuple[int, ...]
    deltas: np.ndarray
    k_star: int
    terminated_by: Termination
    eps_s: float
    threshold: float

    @property
    def final(self) -> TailGeometricSeq:
        return self.iterates[-1]


def run_policy_iteration(params: ModelParams, gains: RiccatiGains,
                         config: IterationConfig) -> IterationTrace:
    """Iterate the mean-field update until the stopping rule (or max_iter) fires.

    The stopping test compares consecutive iterates, so at least one update is
    always performed; a start that is already the fixed point terminates after
    that first update with delta 0.
    """
    validate_params(params)
    if gains.T_p >= 1.0:
        raise AssumptionViolated(
            f"contraction modulus T_p = {gains.T_p} is not below 1; iteration may not converge")
    threshold = stopping_threshold(gains, config.eps_s)

    if config.init_head is None:
        head = np.array([params.nu0])
    else:
        head = np.asarray(config.init_head, dtype=float)
        if head[0] != params.nu0:
            raise ValueError(
                f"init_head must start at nu0 = {params.nu0}, got {head[0]}")
    current = TailGeometricSeq(head=head, r=config.r)

    iterates = [current]
    numbers = [0]
    deltas = []
    terminated = Termination.MAX_ITER
    for k in range(1, config.max_iter + 1):
        updated = update_mean_field(current, gains, params.nu0)
        deltas.append(sup_distance(updated, current))
        current = updated
        iterates.append(current)
        numbers.append(k)
        if not config.keep_iterates and len(iterates) > 2:
            del iterates[0]
            del numbers[0]
        if deltas[-1] <= threshold:
            terminated = Termination.STOPPING_RULE
            break

    return IterationTrace(
        iterates=tuple(iterates),
        iterate_numbers=tuple(numbers),
        deltas=np.asarray(deltas),
        k_star=len(deltas),
        terminated_by=terminated,
        eps_s=config.eps_s,
        threshold=threshold,
    )


@dataclass(frozen=True)
class CertificationReport:
    """Audit of a trace against a higher-precision reference fixed point."""

    errors: np.ndarray
    step_ratios: np.ndarray
    max_step_ratio: float
    fitted_rate: float
    final_error: float
    contraction_ok: bool
    rate_ok: bool
    final_ok: bool
    passed: bool


def certify(trace: IterationTrace, gains: RiccatiGains,
            reference: TailGeometricSeq) -> CertificationReport:
    """Check a finished run against a reference equilibrium.

    Three checks: (i) every consecutive error ratio is at most T_p + 1e-9,
    (ii) the geometric rate fitted to the consecutive deltas is at most
    T_p + 1e-2, (iii) the final error is below the run's eps_s. The reference
    should come from a much tighter eps_s than the trace, since its own error
    contaminates the measured ratios.
    """
    errors = np.array([sup_distance(it, reference) for it in trace.iterates])
    nonzero = errors[:-1] > 0.0
    step_ratios = errors[1:][nonzero] / errors[:-1][nonzero]
    max_step_ratio = float(np.max(step_ratios)) if step_ratios.size else float("nan")
    contraction_ok = bool(np.all(step_ratios <= gains.T_p + 1e-9))

    deltas = trace.deltas[trace.deltas > 0.0]
    if deltas.size >= 2:
        slope = np.polyfit(np.arange(deltas.size), np.log(deltas), 1)[0]
        fitted_rate = float(np.exp(slope))
        rate_ok = fitted_rate <= gains.T_p + 1e-2
    else:
        fitted_rate = 0.0  # nothing to fit: the run converged immediately
        rate_ok = True

    final_error = float(errors[-1])
    final_ok = final_error < trace.eps_s
    return CertificationReport(
        errors=errors,
        step_ratios=step_ratios,
        max_step_ratio=max_step_ratio,
        fitted_rate=fitted_rate,
        final_error=final_error,
        contraction_ok=contraction_ok,
        rate_ok=rate_ok,
        final_ok=final_ok,
        passed=contraction_ok and rate_ok and final_ok,
    )
