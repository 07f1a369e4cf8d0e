"""Tests for the experiment harness, CSV logs, and CLI plumbing."""

import json
import math

import numpy as np
import pytest

from vvqe import cli
from vvqe.harness import (
    ExperimentConfig,
    compare,
    evals_to_accuracy,
    exact_ground_energy,
    format_summary_table,
    read_records_csv,
    run_experiment,
    write_records_csv,
)
from vvqe.optimizers import ConvergenceRecord
from vvqe.pauli_algebra import parse_operator

TOY_TEXT = "0.5 Z0\n0.5 Z1\n0.25 X0 X1\n"
TOY_REFERENCE = -math.sqrt(1.0 + 0.25**2)  # ground state of the 2-qubit toy


@pytest.fixture
def toy_path(tmp_path):
    path = tmp_path / "toy.ham"
    path.write_text(TOY_TEXT)
    return path


def toy_config(toy_path, **kwargs):
    base = dict(
        hamiltonian_path=toy_path,
        n_qubits=2,
        reference_energy=TOY_REFERENCE,
        optimizer="verlet",
        depth=1,
        max_iters=5,
        seed=18,
    )
    base.update(kwargs)
    return ExperimentConfig(**base)


class TestExactGroundEnergy:
    def test_single_z(self):
        op = parse_operator("1.0 Z0\n", 1)
        assert exact_ground_energy(op) == pytest.approx(-1.0)

    def test_toy_operator(self):
        op = parse_operator(TOY_TEXT, 2)
        assert exact_ground_energy(op) == pytest.approx(TOY_REFERENCE, abs=1e-12)


class TestEvalsToAccuracy:
    def test_first_crossing_reported(self):
        records = [
            ConvergenceRecord(0, 1.0, 2.0, 1),
            ConvergenceRecord(1, -0.9, 0.1, 10),
            ConvergenceRecord(2, -0.99, 0.01, 20),
        ]
        assert evals_to_accuracy(records, -1.0, 0.15) == 10

    def test_never_crossing(self):
        records = [ConvergenceRecord(0, 1.0, 2.0, 1)]
        assert evals_to_accuracy(records, -1.0, 0.5) is None

    def test_threshold_inclusive(self):
        records = [ConvergenceRecord(0, -0.9, 0.1, 7)]
        assert evals_to_accuracy(records, -1.0, 0.1) == 7


class TestRunExperiment:
    def test_row_count_and_ledger(self, toy_path):
        records, summary = run_experiment(toy_config(toy_path))
        # depth 1 on 2 qubits: 8 parameters; verlet default costs
        # 1 + 4*8 = 33 per iteration plus the initial evaluation.
        assert len(records) == 6
        assert summary.total_evals == 1 + 5 * 33
        assert records[-1].cumulative_evals == summary.total_evals
        assert summary.status == "ok"

    def test_csv_round_trip(self, toy_path, tmp_path):
        out = tmp_path / "run.csv"
        records, _ = run_experiment(toy_config(toy_path, output_path=out))
        loaded = read_records_csv(out)
        assert len(loaded) == len(records)
        for a, b in zip(records, loaded):
            assert a.iteration == b.iteration
            assert a.energy == b.energy  # .17g survives the round trip
            assert a.cumulative_evals == b.cumulative_evals

    def test_unknown_optimizer_rejected(self, toy_path):
        with pytest.raises(ValueError, match="unknown optimizer"):
            run_experiment(toy_config(toy_path, optimizer="adam"))

    def test_unknown_hyperparameter_rejected(self, toy_path):
        with pytest.raises(ValueError, match="unknown hyperparameter"):
            run_experiment(toy_config(toy_path, hyperparams={"dtt": 0.1}))

    def test_hyperparameter_override_changes_run(self, toy_path):
        _, slow = run_experiment(toy_config(toy_path))
        _, fast = run_experiment(
            toy_config(toy_path, hyperparams={"dt": 0.3})
        )
        assert fast.final_energy != slow.final_energy

    def test_lbfgs_descends_on_toy(self, toy_path):
        records, summary = run_experiment(
            toy_config(toy_path, optimizer="lbfgs", max_iters=15)
        )
        assert summary.final_energy < records[0].energy
        assert summary.final_error < 0.05


class TestCompare:
    def test_shared_iteration_zero(self, toy_path):
        configs = [
            toy_config(toy_path, optimizer=m)
            for m in ("verlet", "lbfgs", "heavy_ball", "nelder_mead")
        ]
        summaries, records = compare(configs)
        startings = {records[m][0].energy for m in records}
        assert len(startings) == 1
        assert [s.method for s in summaries] == [
            "verlet",
            "lbfgs",
            "heavy_ball",
            "nelder_mead",
        ]

    def test_rejects_mismatched_configs(self, toy_path):
        configs = [
            toy_config(toy_path, optimizer="verlet"),
            toy_config(toy_path, optimizer="lbfgs", seed=19),
        ]
        with pytest.raises(ValueError, match="disagree on seed"):
            compare(configs)

    def test_rejects_duplicate_methods(self, toy_path):
        configs = [toy_config(toy_path), toy_config(toy_path)]
        with pytest.raises(ValueError, match="duplicate"):
            compare(configs)

    def test_failed_row_does_not_abort(self, toy_path):
        configs = [
            toy_config(toy_path, optimizer="verlet"),
            toy_config(toy_path, optimizer="lbfgs", hyperparams={"nope": 1}),
        ]
        summaries, _ = compare(configs)
        assert summaries[0].status == "ok"
        assert summaries[1].status.startswith("error")

    def test_summary_table_format(self, toy_path):
        summaries, _ = compare([toy_config(toy_path)])
        table = format_summary_table(summaries)
        assert table.splitlines()[0].startswith("optimizer")
        assert "verlet" in table


class TestCli:
    def test_run_writes_csv(self, toy_path, tmp_path, capsys):
        out = tmp_path / "log.csv"
        code = cli.main(
            [
                "run",
                "--hamiltonian", str(toy_path),
                "--qubits", "2",
                "--reference", str(TOY_REFERENCE),
                "--depth", "1",
                "--iters", "3",
                "--out", str(out),
            ]
        )
        assert code == 0
        assert out.exists()
        assert "verlet" in capsys.readouterr().out

    def test_exact_prints_ground_energy(self, toy_path, capsys):
        code = cli.main(
            ["exact", "--hamiltonian", str(toy_path), "--qubits", "2"]
        )
        assert code == 0
        printed = float(capsys.readouterr().out.strip())
        assert printed == pytest.approx(TOY_REFERENCE, abs=1e-12)

    def test_gradcheck_passes_on_toy(self, toy_path, capsys):
        code = cli.main(
            [
                "gradcheck",
                "--hamiltonian", str(toy_path),
                "--qubits", "2",
                "--depth", "1",
            ]
        )
        assert code == 0
        assert "OK" in capsys.readouterr().out

    def test_compare_writes_outdir(self, toy_path, tmp_path, capsys):
        outdir = tmp_path / "cmp"
        code = cli.main(
            [
                "compare",
                "--hamiltonian", str(toy_path),
                "--qubits", "2",
                "--reference", str(TOY_REFERENCE),
                "--depth", "1",
                "--iters", "2",
                "--optimizers", "verlet,nelder_mead",
                "--outdir", str(outdir),
            ]
        )
        assert code == 0
        assert (outdir / "verlet.csv").exists()
        assert (outdir / "nelder_mead.csv").exists()
        assert (outdir / "summary.txt").exists()
        capsys.readouterr()

    def test_usage_error_exits_one(self, toy_path, capsys):
        with pytest.raises(SystemExit) as info:
            cli.main(["run", "--hamiltonian", str(toy_path)])
        assert info.value.code == 1
        capsys.readouterr()

    def test_unknown_flag_exits_one(self, capsys):
        with pytest.raises(SystemExit) as info:
            cli.main(["run", "--frobnicate"])
        assert info.value.code == 1
        capsys.readouterr()

    def test_missing_file_exits_two(self, tmp_path, capsys):
        code = cli.main(
            [
                "exact",
                "--hamiltonian", str(tmp_path / "absent.ham"),
                "--qubits", "2",
            ]
        )
        assert code == 2
        assert "error" in capsys.readouterr().err

    def test_malformed_file_exits_two(self, tmp_path, capsys):
        bad = tmp_path / "bad.ham"
        bad.write_text("1.0 Q0\n")
        code = cli.main(["exact", "--hamiltonian", str(bad), "--qubits", "1"])
        assert code == 2
        assert "axis" in capsys.readouterr().err

    def test_config_file_supplies_options(self, toy_path, tmp_path, capsys):
        config = tmp_path / "run.json"
        config.write_text(
            json.dumps(
                {
                    "hamiltonian": str(toy_path),
                    "qubits": 2,
                    "reference": TOY_REFERENCE,
                    "depth": 1,
                    "iters": 2,
                }
            )
        )
        code = cli.main(["run", "--config", str(config)])
        assert code == 0
        capsys.readouterr()

    def test_flags_override_config_file(self, toy_path, tmp_path, capsys):
        config = tmp_path / "run.json"
        config.write_text(
            json.dumps(
                {
                    "hamiltonian": str(toy_path),
                    "qubits": 2,
                    "reference": TOY_REFERENCE,
                    "depth": 1,
                    "iters": 2,
                    "optimizer": "verlet",
                }
            )
        )
        code = cli.main(
            ["run", "--config", str(config), "--optimizer", "nelder_mead"]
        )
        assert code == 0
        assert "nelder_mead" in capsys.readouterr().out

    def test_set_override_applies(self, toy_path, capsys):
        code = cli.main(
            [
                "run",
                "--hamiltonian", str(toy_path),
                "--qubits", "2",
                "--reference", str(TOY_REFERENCE),
                "--depth", "1",
                "--iters", "2",
                "--set", "dt=0.05",
            ]
        )
        assert code == 0
        capsys.readouterr()

    def test_bad_set_value_exits_one(self, toy_path, capsys):
        with pytest.raises(SystemExit) as info:
            cli.main(
                [
                    "run",
                    "--hamiltonian", str(toy_path),
                    "--qubits", "2",
                    "--reference", "0.0",
                    "--set", "dt=fast",
                ]
            )
        assert info.value.code == 1
        capsys.readouterr()

    def test_named_flag_equals_set_override(self, toy_path, capsys):
        base = [
            "run",
            "--hamiltonian", str(toy_path),
            "--qubits", "2",
            "--reference", str(TOY_REFERENCE),
            "--depth", "1",
            "--iters", "3",
        ]
        assert cli.main(base + ["--dt", "0.05"]) == 0
        via_flag = capsys.readouterr().out
        assert cli.main(base + ["--set", "dt=0.05"]) == 0
        assert capsys.readouterr().out == via_flag

    def test_named_flag_beats_set_override(self, toy_path, capsys):
        base = [
            "run",
            "--hamiltonian", str(toy_path),
            "--qubits", "2",
            "--reference", str(TOY_REFERENCE),
            "--depth", "1",
            "--iters", "3",
        ]
        assert cli.main(base + ["--dt", "0.05"]) == 0
        reference_out = capsys.readouterr().out
        assert cli.main(base + ["--dt", "0.05", "--set", "dt=1e-6"]) == 0
        assert capsys.readouterr().out == reference_out

    def test_gradcheck_h_flag(self, toy_path, capsys):
        code = cli.main(
            [
                "gradcheck",
                "--hamiltonian", str(toy_path),
                "--qubits", "2",
                "--depth", "1",
                "--h", "1e-5",
                "--tol", "1e-8",
            ]
        )
        assert code == 0
        assert "OK" in capsys.readouterr().out
