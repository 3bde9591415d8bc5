import json

import pytest

from lqmfg.cli import main
from lqmfg.schemas import PolicyDoc

from helpers import TOY, VIOLATING


def write_config(tmp_path, model, solver=None, simulation=None, name="config.json"):
    doc = {"model": dict(model.__dict__)}
    if solver is not None:
        doc["solver"] = solver
    if simulation is not None:
        doc["simulation"] = simulation
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


TOY_SOLVER = {"r": 1.0, "epsilon_s": 0.02}


@pytest.fixture()
def toy_config(tmp_path):
    return write_config(tmp_path, TOY, solver=TOY_SOLVER,
                        simulation={"N": 4, "horizon": 10,
                                    "replications": 2, "seed": 5})


@pytest.fixture()
def solved(tmp_path, toy_config):
    out = tmp_path / "run"
    code = main(["solve", "-c", toy_config, "-o", str(out)])
    assert code == 0
    return out


class TestValidate:
    def test_contractive_model(self, toy_config, capsys):
        assert main(["validate", "-c", toy_config]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith("p = 1")
        assert lines[1].startswith("g_p = -0.3333333")
        assert lines[2].startswith("h_p = 0")
        assert lines[3].startswith("T_p = 0.3333333")
        assert lines[4] == "contraction condition T_p < 1: satisfied"

    def test_violating_model(self, tmp_path, capsys):
        cfg = write_config(tmp_path, VIOLATING)
        assert main(["validate", "-c", cfg]) == 2
        out = capsys.readouterr().out
        assert "VIOLATED" in out

    def test_inadmissible_model(self, tmp_path, capsys):
        bad = type(TOY)(**{**TOY.__dict__, "gamma": 1.0})
        cfg = write_config(tmp_path, bad)
        assert main(["validate", "-c", cfg]) == 1
        assert "DiscountOutOfRange" in capsys.readouterr().err

    def test_missing_config_file(self, tmp_path, capsys):
        assert main(["validate", "-c", str(tmp_path / "nope.json")]) == 1
        assert "cannot read config" in capsys.readouterr().err

    def test_malformed_json(self, tmp_path, capsys):
        bad = tmp_path / "broken.json"
        bad.write_text("{not json")
        assert main(["validate", "-c", str(bad)]) == 1
        assert "not valid JSON" in capsys.readouterr().err

    def test_unknown_config_key(self, tmp_path, capsys):
        bad = tmp_path / "extra.json"
        bad.write_text(json.dumps({"model": dict(TOY.__dict__), "extra": 1}))
        assert main(["validate", "-c", str(bad)]) == 1
        assert "invalid" in capsys.readouterr().err


class TestSolve:
    def test_artifacts_round_trip(self, solved):
        policy = PolicyDoc.model_validate(
            json.loads((solved / "policy.json").read_text()))
        assert policy.r == 1.0
        assert policy.head[0] == TOY.nu0
        assert len(policy.head) == 6
        assert policy.gains.T_p == pytest.approx(1.0 / 3.0, rel=1e-12)

        summary = json.loads((solved / "summary.json").read_text())
        assert summary["k_star"] == 5
        assert summary["terminated_by"] == "StoppingRule"
        assert summary["final_delta"] <= summary["threshold"]

    def test_mean_field_csv_rows(self, solved):
        lines = (solved / "mean_field.csv").read_text().splitlines()
        assert lines[0] == "iteration,t,value"
        # iterate j has head length j + 1; 6 iterates retained
        assert len(lines) - 1 == sum(j + 1 for j in range(6))
        first = lines[1].split(",")
        assert first == ["0", "0", "2"]

    def test_exit_three_on_max_iter(self, tmp_path, capsys):
        cfg = write_config(tmp_path, TOY, solver={**TOY_SOLVER, "max_iter": 2})
        assert main(["solve", "-c", cfg, "-o", str(tmp_path / "o")]) == 3
        assert "MaxIter" in capsys.readouterr().out

    def test_contraction_failure(self, tmp_path, capsys):
        cfg = write_config(tmp_path, VIOLATING, solver=TOY_SOLVER)
        assert main(["solve", "-c", cfg, "-o", str(tmp_path / "o")]) == 2
        assert "AssumptionViolated" in capsys.readouterr().err

    def test_requires_solver_section(self, tmp_path, capsys):
        cfg = write_config(tmp_path, TOY)
        assert main(["solve", "-c", cfg, "-o", str(tmp_path / "o")]) == 1
        assert "solver" in capsys.readouterr().err


class TestSimulate:
    def test_artifacts(self, tmp_path, toy_config, solved, capsys):
        out = tmp_path / "sim"
        code = main(["simulate", "-c", toy_config,
                     "--policy", str(solved / "policy.json"), "-o", str(out)])
        assert code == 0

        costs = (out / "costs.csv").read_text().splitlines()
        assert costs[0] == "N,eps_s,replication,agent,discounted_cost"
        # 1 block: 2 replications x 4 agents
        assert len(costs) - 1 == 8
        n, eps_s, rep, agent, cost = costs[1].split(",")
        assert (n, rep, agent) == ("4", "0", "0")
        assert float(eps_s) == 0.02
        assert float(cost) >= 0.0

        paths = (out / "mean_path.csv").read_text().splitlines()
        assert paths[0] == "replication,t,empirical_mean"
        assert len(paths) - 1 == 2 * 11

        console = capsys.readouterr().out
        assert "N = 4: average cost per agent" in console

    def test_population_sweep_appends_blocks(self, tmp_path, solved):
        cfg = write_config(tmp_path, TOY, solver=TOY_SOLVER,
                           simulation={"N": [2, 3], "horizon": 6,
                                       "replications": 2, "seed": 5})
        out = tmp_path / "sweep"
        assert main(["simulate", "-c", cfg,
                     "--policy", str(solved / "policy.json"), "-o", str(out)]) == 0
        costs = (out / "costs.csv").read_text().splitlines()
        ns = [row.split(",")[0] for row in costs[1:]]
        assert ns == ["2"] * 4 + ["3"] * 6
        paths = (out / "mean_path.csv").read_text().splitlines()
        assert len(paths) - 1 == 2 * 7 * 2  # two blocks of 2 reps x 7 steps

    def test_workers_do_not_change_artifacts(self, tmp_path, toy_config, solved):
        out1, out4 = tmp_path / "w1", tmp_path / "w4"
        main(["simulate", "-c", toy_config, "--policy",
              str(solved / "policy.json"), "-o", str(out1)])
        main(["simulate", "-c", toy_config, "--policy",
              str(solved / "policy.json"), "-o", str(out4), "--workers", "3"])
        assert (out1 / "costs.csv").read_bytes() == (out4 / "costs.csv").read_bytes()
        assert (out1 / "mean_path.csv").read_bytes() == \
            (out4 / "mean_path.csv").read_bytes()

    def test_reruns_are_byte_identical(self, tmp_path, toy_config, solved):
        out1, out2 = tmp_path / "r1", tmp_path / "r2"
        for out in (out1, out2):
            main(["simulate", "-c", toy_config, "--policy",
                  str(solved / "policy.json"), "-o", str(out)])
        assert (out1 / "costs.csv").read_bytes() == (out2 / "costs.csv").read_bytes()

    def test_missing_policy_file(self, tmp_path, toy_config, capsys):
        code = main(["simulate", "-c", toy_config,
                     "--policy", str(tmp_path / "nope.json"),
                     "-o", str(tmp_path / "o")])
        assert code == 1
        assert "cannot read policy" in capsys.readouterr().err

    def test_invalid_policy_document(self, tmp_path, toy_config, capsys):
        bad = tmp_path / "bad_policy.json"
        bad.write_text(json.dumps({"head": [2.0], "r": 1.0}))  # gains missing
        code = main(["simulate", "-c", toy_config, "--policy", str(bad),
                     "-o", str(tmp_path / "o")])
        assert code == 1
        assert "policy" in capsys.readouterr().err

    def test_requires_simulation_section(self, tmp_path, solved, capsys):
        cfg = write_config(tmp_path, TOY, solver=TOY_SOLVER)
        code = main(["simulate", "-c", cfg,
                     "--policy", str(solved / "policy.json"),
                     "-o", str(tmp_path / "o")])
        assert code == 1
        assert "simulation" in capsys.readouterr().err


class TestBound:
    def test_toy_value(self, toy_config, capsys):
        code = main(["bound", "-c", toy_config,
                     "--epsilon", "0.01", "--initial-gap", "1.0"])
        assert code == 0
        out = capsys.readouterr().out
        assert "iterations needed: 5" in out
        assert "T_p = 0.3333333" in out

    def test_zero_iterations(self, toy_config, capsys):
        code = main(["bound", "-c", toy_config,
                     "--epsilon", "0.5", "--initial-gap", "0.5"])
        assert code == 0
        assert "iterations needed: 0" in capsys.readouterr().out

    def test_contraction_failure(self, tmp_path):
        cfg = write_config(tmp_path, VIOLATING)
        assert main(["bound", "-c", cfg,
                     "--epsilon", "0.01", "--initial-gap", "1.0"]) == 2

    def test_nonpositive_flags(self, toy_config, capsys):
        assert main(["bound", "-c", toy_config,
                     "--epsilon", "-1", "--initial-gap", "1.0"]) == 1
        assert "must be positive" in capsys.readouterr().err


class TestArgumentHandling:
    def test_unknown_command(self, capsys):
        assert main(["frobnicate"]) == 1

    def test_missing_required_flag(self, capsys):
        assert main(["validate"]) == 1

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        assert "usage" in capsys.readouterr().out
