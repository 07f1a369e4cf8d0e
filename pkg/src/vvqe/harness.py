"""Experiment harness: run configuration, CSV convergence logs, and
side-by-side optimizer comparisons.

Convergence CSVs are bit-reproducible: rows carry no wall-clock data (the
elapsed_s column is always 0) and floats are written with repr-exact
precision.  Wall time appears only in the run summary.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .ansatz import build_hea, init_params
from .objective import Objective
from .optimizers import (
    ConvergenceRecord,
    lbfgs_minimize,
    nelder_mead_minimize,
    run_heavy_ball,
    run_leapfrog,
    run_verlet,
)
from .pauli_algebra import QubitOperator, parse_operator, to_dense_matrix

DEFAULT_CHEMICAL_ACCURACY = 1.6e-3

CSV_HEADER = "iteration,energy_ha,abs_error_ha,cumulative_evals,elapsed_s"

OPTIMIZER_DEFAULTS: dict[str, dict] = {
    "verlet": {"dt": 0.01, "mass": 0.8, "damping": 0.68, "reuse_force": False},
    "leapfrog": {"dt": 0.01, "mass": 0.8, "damping": 0.68},
    "heavy_ball": {"learning_rate": 0.05, "momentum": 0.9},
    "lbfgs": {"memory": 10, "armijo_c1": 1e-4, "max_backtracks": 20},
    "nelder_mead": {"initial_step": 0.05},
}


@dataclass
class ExperimentConfig:
    """Everything needed to reproduce one optimization run."""

    hamiltonian_path: str | Path
    n_qubits: int
    reference_energy: float
    optimizer: str = "verlet"
    depth: int = 4
    max_iters: int = 40
    seed: int = 18
    output_path: str | Path | None = None
    hyperparams: dict = field(default_factory=dict)
    chem_accuracy: float = DEFAULT_CHEMICAL_ACCURACY


@dataclass
class RunSummary:
    method: str
    final_energy: float
    final_error: float
    total_evals: int
    elapsed: float
    evals_to_chemical_accuracy: int | None
    status: str = "ok"


def load_hamiltonian(path: str | Path, n_qubits: int) -> QubitOperator:
    return parse_operator(Path(path).read_text(encoding="utf-8"), n_qubits)


def evals_to_accuracy(
    records: list[ConvergenceRecord], reference: float, threshold: float
) -> int | None:
    """Cumulative evaluations at the first record within ``threshold`` of
    the reference, or None if the run never got there."""

    for record in records:
        if abs(record.energy - reference) <= threshold:
            return record.cumulative_evals
    return None


def exact_ground_energy(operator: QubitOperator) -> float:
    """Lowest eigenvalue by dense diagonalization."""

    return float(np.linalg.eigvalsh(to_dense_matrix(operator))[0])


def _merged_hyperparams(optimizer: str, overrides: dict) -> dict:
    if optimizer not in OPTIMIZER_DEFAULTS:
        raise ValueError(
            f"unknown optimizer {optimizer!r}; choose from "
            f"{sorted(OPTIMIZER_DEFAULTS)}"
        )
    merged = dict(OPTIMIZER_DEFAULTS[optimizer])
    for key, value in overrides.items():
        if key not in merged:
            raise ValueError(
                f"unknown hyperparameter {key!r} for {optimizer}; valid keys: "
                f"{sorted(merged)}"
            )
        merged[key] = value
    return merged


def run_experiment(
    config: ExperimentConfig,
) -> tuple[list[ConvergenceRecord], RunSummary]:
    """Load, optimize, log.  Returns the record stream and a summary."""

    operator = load_hamiltonian(config.hamiltonian_path, config.n_qubits)
    ansatz = build_hea(config.n_qubits, config.depth)
    theta0 = init_params(ansatz, config.seed)
    obj = Objective(operator, ansatz)
    hp = _merged_hyperparams(config.optimizer, config.hyperparams)
    reference = config.reference_energy
    start = time.perf_counter()
    if config.optimizer == "verlet":
        records, status = run_verlet(
            obj,
            theta0,
            config.max_iters,
            reference,
            dt=hp["dt"],
            mass=hp["mass"],
            damping=hp["damping"],
            reuse_force=bool(hp["reuse_force"]),
        )
    elif config.optimizer == "leapfrog":
        records, status = run_leapfrog(
            obj,
            theta0,
            config.max_iters,
            reference,
            dt=hp["dt"],
            mass=hp["mass"],
            damping=hp["damping"],
        )
    elif config.optimizer == "heavy_ball":
        records, status = run_heavy_ball(
            obj,
            theta0,
            config.max_iters,
            reference,
            learning_rate=hp["learning_rate"],
            momentum=hp["momentum"],
        )
    elif config.optimizer == "lbfgs":
        records, status = lbfgs_minimize(
            obj,
            theta0,
            config.max_iters,
            reference,
            memory=int(hp["memory"]),
            armijo_c1=hp["armijo_c1"],
            max_backtracks=int(hp["max_backtracks"]),
        )
    else:
        records, status = nelder_mead_minimize(
            obj,
            theta0,
            config.max_iters,
            reference,
            initial_step=hp["initial_step"],
        )
    elapsed = time.perf_counter() - start
    if records[-1].cumulative_evals != obj.counter.energy_evals:
        raise RuntimeError(
            "evaluation ledger out of sync: record says "
            f"{records[-1].cumulative_evals}, counter says "
            f"{obj.counter.energy_evals}"
        )
    if config.output_path is not None:
        write_records_csv(config.output_path, records)
    final = records[-1]
    summary = RunSummary(
        method=config.optimizer,
        final_energy=final.energy,
        final_error=abs(final.energy - reference),
        total_evals=obj.counter.energy_evals,
        elapsed=elapsed,
        evals_to_chemical_accuracy=evals_to_accuracy(
            records, reference, config.chem_accuracy
        ),
        status=status,
    )
    return records, summary


def write_records_csv(path: str | Path, records: list[ConvergenceRecord]) -> None:
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            f"{r.iteration},{r.energy:.17g},{r.abs_error:.17g},"
            f"{r.cumulative_evals},{r.elapsed:.17g}"
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_records_csv(path: str | Path) -> list[ConvergenceRecord]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"{path}: not a convergence CSV")
    records = []
    for line in lines[1:]:
        iteration, energy, abs_error, cumulative, elapsed = line.split(",")
        records.append(
            ConvergenceRecord(
                int(iteration),
                float(energy),
                float(abs_error),
                int(cumulative),
                float(elapsed),
            )
        )
    return records


_SHARED_COMPARE_FIELDS = (
    "hamiltonian_path",
    "n_qubits",
    "reference_energy",
    "depth",
    "max_iters",
    "seed",
    "chem_accuracy",
)


def compare(
    configs: list[ExperimentConfig],
) -> tuple[list[RunSummary], dict[str, list[ConvergenceRecord]]]:
    """Run several optimizers under one initialization and collect a table.

    All configs must agree on everything except the optimizer and its
    hyperparameters, so every row starts from the same seed and therefore
    the same parameter vector.  A row that fails at runtime is reported in
    its status and does not abort the table.
    """

    if not configs:
        raise ValueError("compare needs at least one configuration")
    first = configs[0]
    for cfg in configs[1:]:
        for name in _SHARED_COMPARE_FIELDS:
            if getattr(cfg, name) != getattr(first, name):
                raise ValueError(
                    f"compare configs disagree on {name}: "
                    f"{getattr(cfg, name)!r} vs {getattr(first, name)!r}"
                )
    methods = [cfg.optimizer for cfg in configs]
    if len(set(methods)) != len(methods):
        raise ValueError(f"duplicate optimizer rows in compare: {methods}")
    summaries = []
    records_by_method: dict[str, list[ConvergenceRecord]] = {}
    for cfg in configs:
        try:
            records, summary = run_experiment(cfg)
        except (ValueError, OSError, RuntimeError) as exc:
            records = []
            summary = RunSummary(
                method=cfg.optimizer,
                final_energy=float("nan"),
                final_error=float("nan"),
                total_evals=0,
                elapsed=0.0,
                evals_to_chemical_accuracy=None,
                status=f"error: {exc}",
            )
        summaries.append(summary)
        records_by_method[cfg.optimizer] = records
    return summaries, records_by_method


def format_summary_table(summaries: list[RunSummary]) -> str:
    """Fixed-width text table, one optimizer per row."""

    header = (
        f"{'optimizer':<12} {'final_energy_ha':>18} {'final_error_ha':>15} "
        f"{'total_evals':>12} {'time_s':>8} {'evals_to_acc':>13} status"
    )
    rows = [header, "-" * len(header)]
    for s in summaries:
        to_acc = str(s.evals_to_chemical_accuracy) if (
            s.evals_to_chemical_accuracy is not None
        ) else "n/a"
        rows.append(
            f"{s.method:<12} {s.final_energy:>18.10f} {s.final_error:>15.4e} "
            f"{s.total_evals:>12} {s.elapsed:>8.2f} {to_acc:>13} {s.status}"
        )
    return "\n".join(rows) + "\n"
