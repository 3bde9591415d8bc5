from __future__ import annotations

import pytest

from lqmfg import (
    ControlPolicy,
    IterationConfig,
    run_policy_iteration,
    solve_riccati,
)

from helpers import BENCH, TOY, VIOLATING


@pytest.fixture(scope="session")
def bench_params():
    return BENCH


@pytest.fixture(scope="session")
def bench_gains():
    return solve_riccati(BENCH)


@pytest.fixture(scope="session")
def toy_params():
    return TOY


@pytest.fixture(scope="session")
def toy_gains():
    return solve_riccati(TOY)


@pytest.fixture(scope="session")
def violating_params():
    return VIOLATING


@pytest.fixture(scope="session")
def bench_reference(bench_params, bench_gains):
    """High-accuracy benchmark run; its final iterate stands in for the fixed point."""
    return run_policy_iteration(bench_params, bench_gains,
                                IterationConfig(eps_s=1e-8, r=0.6))


@pytest.fixture(scope="session")
def bench_policy(bench_gains, bench_reference):
    """Equilibrium policy for the benchmark model."""
    return ControlPolicy(mean_field=bench_reference.final, gains=bench_gains)
