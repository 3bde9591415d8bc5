"""Command-line front end: config ingestion, orchestration, artifact emission.

The CLI is a thin client of the HTTP service. By default it mounts the
service in-process (no network); --server points it at a running instance
instead. Artifacts: policy.json, summary.json, mean_field.csv from solve;
costs.csv, mean_path.csv from simulate. CSV numeric fields carry 17
significant digits so re-ingestion is bit-exact.

Exit codes: 0 success, 1 unreadable or invalid inputs, 2 contraction
condition fails, 3 solve hit max_iter.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import warnings
from pathlib import Path
from typing import Any

import httpx
from pydantic import ValidationError

from .schemas import ExperimentConfig, PolicyDoc


class _InputError(Exception):
    """Bad config, policy file, or flag value; maps to exit 1."""


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _load_json(path: str, what: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise _InputError(f"cannot read {what} {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise _InputError(f"{what} {path} is not valid JSON: {exc}")


def _load_config(path: str) -> ExperimentConfig:
    raw = _load_json(path, "config")
    try:
        return ExperimentConfig.model_validate(raw)
    except ValidationError as exc:
        raise _InputError(f"config {path} is invalid:\n{exc}")


def _load_policy(path: str) -> PolicyDoc:
    raw = _load_json(path, "policy")
    try:
        return PolicyDoc.model_validate(raw)
    except ValidationError as exc:
        raise _InputError(f"policy {path} is invalid:\n{exc}")


def _client(server: str | None):
    if server:
        return httpx.Client(base_url=server, timeout=None)
    # in-process transport against the service app; no socket involved
    with warnings.catch_warnings():
        # starlette announces its test client's httpx dependency on import;
        # not actionable for end users of this CLI
        warnings.filterwarnings(
            "ignore", message="Using `httpx` with `starlette.testclient`")
        from fastapi.testclient import TestClient

    from .service import app

    return TestClient(app)


def _post(args, path: str, payload: dict) -> httpx.Response:
    with _client(args.server) as client:
        return client.post(path, json=payload)


def _report_http_error(resp: httpx.Response) -> int:
    try:
        detail = resp.json().get("detail")
    except ValueError:
        detail = resp.text
    if isinstance(detail, dict) and "message" in detail:
        name = detail.get("violation")
        detail = f"{name}: {detail['message']}" if name else detail["message"]
    print(f"error: {detail}", file=sys.stderr)
    return 2 if resp.status_code == 409 else 1


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_json(path: Path, doc: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def cmd_validate(args) -> int:
    config = _load_config(args.config)
    resp = _post(args, "/validate", {"model": config.model.model_dump()})
    if resp.status_code != 200:
        return _report_http_error(resp)
    body = resp.json()
    gains = body["gains"]
    for name in ("p", "g_p", "h_p", "T_p"):
        print(f"{name} = {_fmt(gains[name])}")
    holds = body["contraction_holds"]
    print(f"contraction condition T_p < 1: {'satisfied' if holds else 'VIOLATED'}")
    return 0 if holds else 2


def cmd_solve(args) -> int:
    config = _load_config(args.config)
    if config.solver is None:
        raise _InputError("config has no \"solver\" object; solve needs one")
    resp = _post(args, "/solve", {"model": config.model.model_dump(),
                                  "solver": config.solver.model_dump()})
    if resp.status_code != 200:
        return _report_http_error(resp)
    body = resp.json()
    out = _out_dir(args)
    _write_json(out / "policy.json", body["policy"])
    _write_json(out / "summary.json", body["summary"])
    _write_csv(out / "mean_field.csv", ["iteration", "t", "value"],
               ((block["iteration"], t, _fmt(v))
                for block in body["iterates"]
                for t, v in enumerate(block["head"])))
    summary = body["summary"]
    print(f"k_star = {summary['k_star']}, final_delta = {_fmt(summary['final_delta'])}, "
          f"threshold = {_fmt(summary['threshold'])}, terminated_by = {summary['terminated_by']}")
    print(f"wrote policy.json, summary.json, mean_field.csv to {out}")
    return 0 if summary["terminated_by"] == "StoppingRule" else 3


def cmd_simulate(args) -> int:
    config = _load_config(args.config)
    if config.simulation is None:
        raise _InputError("config has no \"simulation\" object; simulate needs one")
    if config.solver is None:
        raise _InputError("config has no \"solver\" object; simulate records its epsilon_s")
    policy = _load_policy(args.policy)
    resp = _post(args, "/simulate", {"model": config.model.model_dump(),
                                     "simulation": config.simulation.model_dump(),
                                     "policy": policy.model_dump(),
                                     "workers": args.workers})
    if resp.status_code != 200:
        return _report_http_error(resp)
    blocks = resp.json()["blocks"]
    out = _out_dir(args)
    eps_s = config.solver.epsilon_s
    _write_csv(out / "costs.csv",
               ["N", "eps_s", "replication", "agent", "discounted_cost"],
               ((block["N"], _fmt(eps_s), rep, agent, _fmt(cost))
                for block in blocks
                for rep, costs in enumerate(block["per_agent_costs"])
                for agent, cost in enumerate(costs)))
    _write_csv(out / "mean_path.csv", ["replication", "t", "empirical_mean"],
               ((rep, t, _fmt(value))
                for block in blocks
                for rep, path in enumerate(block["empirical_mean_paths"])
                for t, value in enumerate(path)))
    for block in blocks:
        print(f"N = {block['N']}: average cost per agent = {_fmt(block['avg_cost'])}")
    print(f"wrote costs.csv, mean_path.csv to {out}")
    return 0


def cmd_bound(args) -> int:
    config = _load_config(args.config)
    if args.epsilon <= 0.0 or args.initial_gap <= 0.0:
        raise _InputError("--epsilon and --initial-gap must be positive")
    resp = _post(args, "/bound", {"model": config.model.model_dump(),
                                  "epsilon": args.epsilon,
                                  "initial_gap": args.initial_gap})
    if resp.status_code != 200:
        return _report_http_error(resp)
    body = resp.json()
    print(f"iterations needed: {body['iterations']} (T_p = {_fmt(body['T_p'])})")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lqmfg",
        description="Solve and validate discounted linear-quadratic mean-field games.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("-c", "--config", required=True, help="path to the JSON config file")
        p.add_argument("--server", default=None,
                       help="base URL of a running service; default runs in-process")

    p_validate = sub.add_parser("validate", help="check parameters and print the gains")
    common(p_validate)
    p_validate.set_defaults(func=cmd_validate)

    p_solve = sub.add_parser("solve", help="run the fixed-point iteration")
    common(p_solve)
    p_solve.add_argument("-o", "--out", default=".", help="output directory")
    p_solve.set_defaults(func=cmd_solve)

    p_sim = sub.add_parser("simulate", help="finite-population Monte Carlo under a solved policy")
    common(p_sim)
    p_sim.add_argument("--policy", required=True, help="path to policy.json from solve")
    p_sim.add_argument("-o", "--out", default=".", help="output directory")
    p_sim.add_argument("--workers", type=int, default=1,
                       help="concurrent replications (results identical for any value)")
    p_sim.set_defaults(func=cmd_simulate)

    p_bound = sub.add_parser("bound", help="iteration-count bound for a target accuracy")
    common(p_bound)
    p_bound.add_argument("--epsilon", type=float, required=True, help="target accuracy")
    p_bound.add_argument("--initial-gap", type=float, required=True,
                         help="sup distance from the start to the fixed point")
    p_bound.set_defaults(func=cmd_bound)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; 2 is reserved for contraction
        # failure here, so fold usage problems into the input-error code
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except httpx.HTTPError as exc:
        print(f"error: cannot reach server: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
