"""Molecule descriptions and the integrals-to-qubit-operator pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .basis import NUCLEAR_CHARGE, build_basis
from .fci import fci_ground_energy
from .integrals import (
    clear_caches,
    eri_tensor,
    kinetic_matrix,
    nuclear_attraction_matrix,
    nuclear_repulsion,
    overlap_matrix,
)
from .qubits import PauliKey, qubit_hamiltonian
from .scf import restricted_hartree_fock

ANGSTROM_TO_BOHR = 1.0 / 0.52917721092


@dataclass(frozen=True)
class MoleculeSpec:
    """A molecular geometry with Cartesian coordinates in angstrom."""

    name: str
    atoms: tuple[tuple[str, tuple[float, float, float]], ...]
    charge: int = 0

    def __post_init__(self) -> None:
        if not self.atoms:
            raise ValueError("molecule needs at least one atom")
        for symbol, position in self.atoms:
            if symbol not in NUCLEAR_CHARGE:
                raise ValueError(f"unsupported element {symbol!r}")
            if len(position) != 3 or not all(np.isfinite(position)):
                raise ValueError(f"bad coordinates for {symbol}: {position!r}")

    @property
    def n_electrons(self) -> int:
        return sum(NUCLEAR_CHARGE[s] for s, _ in self.atoms) - self.charge

    def nuclei_bohr(self) -> list[tuple[int, np.ndarray]]:
        """(charge, position) pairs with positions converted to Bohr."""

        return [
            (NUCLEAR_CHARGE[s], np.asarray(xyz) * ANGSTROM_TO_BOHR)
            for s, xyz in self.atoms
        ]


PRESETS = {
    "h2": MoleculeSpec(
        name="h2",
        atoms=(("H", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 0.977))),
    ),
    "lih": MoleculeSpec(
        name="lih",
        atoms=(("Li", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 1.596))),
    ),
}


@dataclass
class PipelineResult:
    """Everything produced for one molecule at one geometry."""

    molecule: MoleculeSpec
    n_qubits: int
    n_electrons: int
    hf_energy: float
    fci_energy: float
    e_nuclear: float
    operator: dict[PauliKey, float] = field(repr=False)
    core_mo: np.ndarray = field(repr=False)
    eri_mo: np.ndarray = field(repr=False)


def transform_to_mo(
    core_ao: np.ndarray, eri_ao: np.ndarray, mo_coefficients: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Rotate the core Hamiltonian and (pq|rs) tensor into the MO basis."""

    c = mo_coefficients
    core_mo = c.T @ core_ao @ c
    eri_mo = np.einsum(
        "pqrs,pi,qj,rk,sl->ijkl", eri_ao, c, c, c, c, optimize=True
    )
    return core_mo, eri_mo


def run_pipeline(molecule: MoleculeSpec) -> PipelineResult:
    """Integrals, RHF, MO transform, Jordan-Wigner map, and FCI energy."""

    if molecule.n_electrons % 2 != 0:
        raise ValueError("only closed-shell (even-electron) molecules supported")
    nuclei = molecule.nuclei_bohr()
    basis = build_basis(
        [
            (symbol, tuple(v * ANGSTROM_TO_BOHR for v in xyz))
            for symbol, xyz in molecule.atoms
        ]
    )

    clear_caches()
    overlap = overlap_matrix(basis)
    kinetic = kinetic_matrix(basis)
    nuclear = nuclear_attraction_matrix(basis, nuclei)
    eri = eri_tensor(basis)
    e_nuclear = nuclear_repulsion(nuclei)

    scf = restricted_hartree_fock(
        overlap, kinetic, nuclear, eri, molecule.n_electrons, e_nuclear
    )
    core_mo, eri_mo = transform_to_mo(kinetic + nuclear, eri, scf.mo_coefficients)
    operator = qubit_hamiltonian(core_mo, eri_mo, e_nuclear)
    fci_energy = fci_ground_energy(
        core_mo, eri_mo, molecule.n_electrons, e_nuclear
    )
    return PipelineResult(
        molecule=molecule,
        n_qubits=2 * core_mo.shape[0],
        n_electrons=molecule.n_electrons,
        hf_energy=scf.energy,
        fci_energy=fci_energy,
        e_nuclear=e_nuclear,
        operator=operator,
        core_mo=core_mo,
        eri_mo=eri_mo,
    )


def parse_geometry(text: str) -> tuple[tuple[str, tuple[float, float, float]], ...]:
    """Parse 'H 0 0 0; H 0 0 0.977' into an atom tuple (angstrom)."""

    atoms = []
    for chunk in text.split(";"):
        fields = chunk.split()
        if not fields:
            continue
        if len(fields) != 4:
            raise ValueError(f"expected 'SYMBOL X Y Z', got {chunk.strip()!r}")
        symbol = fields[0].capitalize()
        try:
            xyz = tuple(float(v) for v in fields[1:])
        except ValueError as exc:
            raise ValueError(f"bad coordinate in {chunk.strip()!r}") from exc
        atoms.append((symbol, xyz))
    if not atoms:
        raise ValueError("geometry string contains no atoms")
    return tuple(atoms)
