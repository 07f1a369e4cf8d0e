"""Command-line entry point: molecule in, qubit-Hamiltonian file out."""

from __future__ import annotations

import argparse
import sys

from .molecules import PRESETS, MoleculeSpec, parse_geometry, run_pipeline
from .qubits import serialize_hamiltonian
from .scf import ScfConvergenceError


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # noqa: D102
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="chemgen",
        description=(
            "Compute an STO-3G qubit Hamiltonian for a small closed-shell "
            "molecule and write it as a plain-text Pauli-term file."
        ),
    )
    parser.add_argument(
        "--molecule",
        required=True,
        choices=sorted(PRESETS) + ["custom"],
        help="preset geometry, or 'custom' with --geometry",
    )
    parser.add_argument(
        "--geometry",
        help="custom geometry 'H 0 0 0; H 0 0 0.977' in angstrom",
    )
    parser.add_argument(
        "--charge", type=int, default=0, help="total molecular charge"
    )
    parser.add_argument(
        "--basis",
        default="sto-3g",
        choices=["sto-3g"],
        help="basis set (only sto-3g is built in)",
    )
    parser.add_argument("--out", help="output path for the Hamiltonian file")
    return parser


def _resolve_molecule(args: argparse.Namespace) -> MoleculeSpec:
    if args.molecule == "custom":
        if not args.geometry:
            print(
                "chemgen: error: --molecule custom requires --geometry",
                file=sys.stderr,
            )
            raise SystemExit(1)
        atoms = parse_geometry(args.geometry)
        return MoleculeSpec(name="custom", atoms=atoms, charge=args.charge)
    preset = PRESETS[args.molecule]
    if args.charge != preset.charge:
        return MoleculeSpec(
            name=preset.name, atoms=preset.atoms, charge=args.charge
        )
    return preset


def _geometry_text(molecule: MoleculeSpec) -> str:
    return "; ".join(
        f"{symbol} {x:g} {y:g} {z:g}" for symbol, (x, y, z) in molecule.atoms
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        molecule = _resolve_molecule(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    except ValueError as exc:
        print(f"chemgen: error: {exc}", file=sys.stderr)
        return 1

    try:
        result = run_pipeline(molecule)
    except (ValueError, ScfConvergenceError) as exc:
        print(f"chemgen: error: {exc}", file=sys.stderr)
        return 2

    print(f"molecule:      {molecule.name}")
    print(f"geometry (A):  {_geometry_text(molecule)}")
    print(f"basis:         {args.basis}")
    print(f"n_qubits:      {result.n_qubits}")
    print(f"n_electrons:   {result.n_electrons}")
    print(f"pauli terms:   {len(result.operator)}")
    print(f"hf energy:     {result.hf_energy:.10f} Ha")
    print(f"fci energy:    {result.fci_energy:.10f} Ha")

    if args.out:
        header = [
            f"molecule: {molecule.name}",
            f"geometry_angstrom: {_geometry_text(molecule)}",
            f"basis: {args.basis}",
            f"n_qubits: {result.n_qubits}",
            f"n_electrons: {result.n_electrons}",
            f"hf_energy_ha: {result.hf_energy:.10f}",
            f"fci_energy_ha: {result.fci_energy:.10f}",
            "spin_orbital_order: qubit 2p = alpha of spatial orbital p, "
            "qubit 2p+1 = beta",
        ]
        text = serialize_hamiltonian(result.operator, header_lines=header)
        try:
            with open(args.out, "w", encoding="ascii") as handle:
                handle.write(text)
        except OSError as exc:
            print(f"chemgen: error: {exc}", file=sys.stderr)
            return 2
        print(f"wrote:         {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
