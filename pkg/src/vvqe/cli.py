"""Command-line front end.

Subcommands: ``run`` (one optimizer, CSV log), ``compare`` (several
optimizers side by side), ``exact`` (dense ground energy), ``gradcheck``
(parameter-shift gradient against central finite differences).

Exit codes: 0 success, 1 usage error, 2 runtime failure (including a run
that diverged or a gradient check beyond tolerance).

A JSON config file may supply any long option (underscored key names);
explicit flags win over the file.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .ansatz import build_hea, init_params
from .harness import (
    DEFAULT_CHEMICAL_ACCURACY,
    ExperimentConfig,
    OPTIMIZER_DEFAULTS,
    compare,
    exact_ground_energy,
    format_summary_table,
    load_hamiltonian,
    run_experiment,
)
from .objective import Objective
from .pauli_algebra import HamiltonianFormatError
from .optimizers import DivergenceError

DEFAULT_COMPARE_METHODS = "verlet,lbfgs,heavy_ball,nelder_mead"

_INT_HYPERPARAMS = {"memory", "max_backtracks"}

# run-subcommand flag name -> hyperparameter key
_NAMED_HYPERPARAMS = {
    "dt": "dt",
    "mass": "mass",
    "damping": "damping",
    "lr": "learning_rate",
    "momentum": "momentum",
}


class _Parser(argparse.ArgumentParser):
    """argparse maps usage errors to exit code 2; remap them to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _usage_error(parser: argparse.ArgumentParser, message: str) -> None:
    parser.print_usage(sys.stderr)
    sys.stderr.write(f"{parser.prog}: error: {message}\n")
    raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vvqe", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_reference=True):
        p.add_argument("--config", type=Path, help="JSON file of option values")
        p.add_argument("--hamiltonian", type=Path, help="operator file")
        p.add_argument("--qubits", type=int, help="register size")
        if with_reference:
            p.add_argument(
                "--reference", type=float, help="reference ground energy (Ha)"
            )
            p.add_argument("--depth", type=int, help="ansatz depth (default 4)")
            p.add_argument("--seed", type=int, help="init seed (default 18)")

    p_run = sub.add_parser("run", parents=[], help="one optimizer, CSV log")
    add_common(p_run)
    p_run.add_argument(
        "--optimizer", choices=sorted(OPTIMIZER_DEFAULTS), help="default verlet"
    )
    p_run.add_argument("--iters", type=int, help="iteration budget (default 40)")
    p_run.add_argument("--out", type=Path, help="convergence CSV path")
    p_run.add_argument(
        "--chem-accuracy", type=float, dest="chem_accuracy",
        help=f"accuracy threshold (default {DEFAULT_CHEMICAL_ACCURACY})",
    )
    p_run.add_argument(
        "--reuse-force", action="store_const", const=True, dest="reuse_force",
        help="verlet only: reuse the previous closing force",
    )
    p_run.add_argument("--dt", type=float, help="verlet/leapfrog time step")
    p_run.add_argument("--mass", type=float, help="verlet/leapfrog mass")
    p_run.add_argument(
        "--damping", type=float, help="verlet/leapfrog velocity damping"
    )
    p_run.add_argument("--lr", type=float, help="heavy-ball learning rate")
    p_run.add_argument("--momentum", type=float, help="heavy-ball momentum")
    p_run.add_argument(
        "--set", action="append", dest="overrides", metavar="KEY=VALUE",
        help="any hyperparameter override, e.g. --set memory=5",
    )

    p_cmp = sub.add_parser("compare", help="several optimizers, one table")
    add_common(p_cmp)
    p_cmp.add_argument(
        "--optimizers", help=f"comma list (default {DEFAULT_COMPARE_METHODS})"
    )
    p_cmp.add_argument("--iters", type=int, help="iteration budget (default 40)")
    p_cmp.add_argument(
        "--outdir", type=Path, help="directory for per-method CSVs + summary"
    )
    p_cmp.add_argument(
        "--chem-accuracy", type=float, dest="chem_accuracy",
        help=f"accuracy threshold (default {DEFAULT_CHEMICAL_ACCURACY})",
    )
    p_cmp.add_argument(
        "--set", action="append", dest="overrides", metavar="METHOD.KEY=VALUE",
        help="per-method override, e.g. --set verlet.dt=0.02",
    )

    p_exact = sub.add_parser("exact", help="dense ground energy of a file")
    add_common(p_exact, with_reference=False)

    p_grad = sub.add_parser(
        "gradcheck", help="parameter-shift gradient vs finite differences"
    )
    add_common(p_grad)
    p_grad.add_argument(
        "--h", type=float, dest="fd_step",
        help="finite-difference step (default 1e-4)",
    )
    p_grad.add_argument(
        "--tol", type=float, help="max deviation to accept (default 1e-6)"
    )

    return parser


def _load_config_file(parser, path: Path | None) -> dict:
    if path is None:
        return {}
    try:
        values = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        _usage_error(parser, f"cannot read config {path}: {exc}")
    if not isinstance(values, dict):
        _usage_error(parser, f"config {path} must hold a JSON object")
    return values


def _resolve(args, file_values: dict, key: str, default=None):
    """Flag beats config file beats default."""

    flag = getattr(args, key, None)
    if flag is not None:
        return flag
    if key in file_values:
        return file_values[key]
    return default


def _require(parser, args, file_values, key: str):
    value = _resolve(args, file_values, key)
    if value is None:
        _usage_error(parser, f"missing required option --{key.replace('_', '-')}")
    return value


def _parse_override_value(key: str, text: str):
    if text.lower() in ("true", "false"):
        return text.lower() == "true"
    value = float(text)
    return int(value) if key in _INT_HYPERPARAMS else value


def _run_overrides(parser, pairs) -> dict:
    """``--set dt=0.02`` entries for a single run."""

    overrides = {}
    for pair in pairs or []:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            _usage_error(parser, f"--set expects KEY=VALUE, got {pair!r}")
        try:
            overrides[key] = _parse_override_value(key, value)
        except ValueError:
            _usage_error(parser, f"--set {pair!r}: value is not a number")
    return overrides


def _compare_overrides(parser, pairs) -> dict[str, dict]:
    """``--set method.key=value`` entries for compare."""

    by_method: dict[str, dict] = {}
    for pair in pairs or []:
        key, sep, value = pair.partition("=")
        method, dot, hyper = key.partition(".")
        if not sep or not dot or not method or not hyper:
            _usage_error(
                parser, f"--set expects METHOD.KEY=VALUE, got {pair!r}"
            )
        try:
            by_method.setdefault(method, {})[hyper] = _parse_override_value(
                hyper, value
            )
        except ValueError:
            _usage_error(parser, f"--set {pair!r}: value is not a number")
    return by_method


def _cmd_run(parser, args) -> int:
    file_values = _load_config_file(parser, args.config)
    overrides = {}
    if "set" in file_values:
        overrides.update(_run_overrides(parser, list(file_values["set"])))
    for flag, key in _NAMED_HYPERPARAMS.items():
        if flag in file_values:
            overrides[key] = float(file_values[flag])
    overrides.update(_run_overrides(parser, args.overrides))
    for flag, key in _NAMED_HYPERPARAMS.items():
        value = getattr(args, flag, None)
        if value is not None:
            overrides[key] = value
    if _resolve(args, file_values, "reuse_force", False):
        overrides.setdefault("reuse_force", True)
    config = ExperimentConfig(
        hamiltonian_path=_require(parser, args, file_values, "hamiltonian"),
        n_qubits=int(_require(parser, args, file_values, "qubits")),
        reference_energy=float(_require(parser, args, file_values, "reference")),
        optimizer=_resolve(args, file_values, "optimizer", "verlet"),
        depth=int(_resolve(args, file_values, "depth", 4)),
        max_iters=int(_resolve(args, file_values, "iters", 40)),
        seed=int(_resolve(args, file_values, "seed", 18)),
        output_path=_resolve(args, file_values, "out"),
        hyperparams=overrides,
        chem_accuracy=float(
            _resolve(args, file_values, "chem_accuracy", DEFAULT_CHEMICAL_ACCURACY)
        ),
    )
    records, summary = run_experiment(config)
    print(format_summary_table([summary]), end="")
    if config.output_path is not None:
        print(f"convergence log: {config.output_path}")
    return 0 if summary.status == "ok" else 2


def _cmd_compare(parser, args) -> int:
    file_values = _load_config_file(parser, args.config)
    by_method = _compare_overrides(parser, args.overrides)
    if "set" in file_values:
        merged = _compare_overrides(parser, list(file_values["set"]))
        for method, entries in by_method.items():
            merged.setdefault(method, {}).update(entries)
        by_method = merged
    methods = str(
        _resolve(args, file_values, "optimizers", DEFAULT_COMPARE_METHODS)
    ).split(",")
    methods = [m.strip() for m in methods if m.strip()]
    outdir = _resolve(args, file_values, "outdir")
    if outdir is not None:
        outdir = Path(outdir)
        outdir.mkdir(parents=True, exist_ok=True)
    configs = []
    for method in methods:
        configs.append(
            ExperimentConfig(
                hamiltonian_path=_require(parser, args, file_values, "hamiltonian"),
                n_qubits=int(_require(parser, args, file_values, "qubits")),
                reference_energy=float(
                    _require(parser, args, file_values, "reference")
                ),
                optimizer=method,
                depth=int(_resolve(args, file_values, "depth", 4)),
                max_iters=int(_resolve(args, file_values, "iters", 40)),
                seed=int(_resolve(args, file_values, "seed", 18)),
                output_path=(outdir / f"{method}.csv") if outdir else None,
                hyperparams=by_method.get(method, {}),
                chem_accuracy=float(
                    _resolve(
                        args, file_values, "chem_accuracy",
                        DEFAULT_CHEMICAL_ACCURACY,
                    )
                ),
            )
        )
    summaries, _ = compare(configs)
    table = format_summary_table(summaries)
    print(table, end="")
    if outdir is not None:
        (outdir / "summary.txt").write_text(table, encoding="utf-8")
        print(f"logs in: {outdir}")
    if all(s.status.startswith("error") for s in summaries):
        return 2
    return 0


def _cmd_exact(parser, args) -> int:
    file_values = _load_config_file(parser, args.config)
    operator = load_hamiltonian(
        _require(parser, args, file_values, "hamiltonian"),
        int(_require(parser, args, file_values, "qubits")),
    )
    print(f"{exact_ground_energy(operator):.17g}")
    return 0


def _cmd_gradcheck(parser, args) -> int:
    file_values = _load_config_file(parser, args.config)
    operator = load_hamiltonian(
        _require(parser, args, file_values, "hamiltonian"),
        int(_require(parser, args, file_values, "qubits")),
    )
    depth = int(_resolve(args, file_values, "depth", 4))
    seed = int(_resolve(args, file_values, "seed", 18))
    step = (
        args.fd_step
        if args.fd_step is not None
        else float(file_values.get("h", 1e-4))
    )
    tol = float(_resolve(args, file_values, "tol", 1e-6))
    ansatz = build_hea(operator.n_qubits, depth)
    params = init_params(ansatz, seed)
    obj = Objective(operator, ansatz)
    analytic = obj.gradient(params)
    finite = np.empty_like(analytic)
    for i in range(ansatz.n_params):
        up = params.copy()
        up[i] += step
        down = params.copy()
        down[i] -= step
        finite[i] = (obj.energy(up) - obj.energy(down)) / (2.0 * step)
    deviation = float(np.max(np.abs(analytic - finite)))
    verdict = "OK" if deviation <= tol else "FAIL"
    print(
        f"max |parameter-shift - finite-difference| = {deviation:.3e} "
        f"(tol {tol:.1e}, {obj.counter.energy_evals} evaluations): {verdict}"
    )
    return 0 if verdict == "OK" else 2


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "run": _cmd_run,
        "compare": _cmd_compare,
        "exact": _cmd_exact,
        "gradcheck": _cmd_gradcheck,
    }
    try:
        return handlers[args.command](parser, args)
    except (HamiltonianFormatError, DivergenceError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
