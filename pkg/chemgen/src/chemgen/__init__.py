"""Qubit-Hamiltonian generator for small molecules.

Pipeline: STO-3G Gaussian integrals -> restricted Hartree-Fock -> spatial
MO integrals -> interleaved spin orbitals -> Jordan-Wigner transform,
with a determinant FCI solver for reference energies.
"""

__version__ = "0.1.0"
