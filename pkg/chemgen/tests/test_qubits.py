"""Jordan-Wigner string algebra, operator identities, and serialization."""

import numpy as np
import pytest

from chemgen.molecules import PRESETS, run_pipeline
from chemgen.qubits import (
    dense_matrix,
    format_coefficient,
    ladder_operator,
    multiply_keys,
    multiply_operators,
    qubit_hamiltonian,
    serialize_hamiltonian,
)


@pytest.fixture(scope="module")
def h2_pipeline():
    return run_pipeline(PRESETS["h2"])


def operator_norm(operator):
    return max((abs(c) for c in operator.values()), default=0.0)


def subtract(left, right):
    result = dict(left)
    for key, coeff in right.items():
        result[key] = result.get(key, 0.0) - coeff
    return result


class TestPauliProducts:
    """Single-string multiplication phases."""

    def test_cyclic_products(self):
        assert multiply_keys(((0, "X"),), ((0, "Y"),)) == (1j, ((0, "Z"),))
        assert multiply_keys(((0, "Y"),), ((0, "Z"),)) == (1j, ((0, "X"),))
        assert multiply_keys(((0, "Z"),), ((0, "X"),)) == (1j, ((0, "Y"),))

    def test_anticyclic_products(self):
        assert multiply_keys(((0, "Y"),), ((0, "X"),)) == (-1j, ((0, "Z"),))

    def test_squares_cancel(self):
        for axis in "XYZ":
            phase, key = multiply_keys(((2, axis),), ((2, axis),))
            assert (phase, key) == (1.0, ())

    def test_disjoint_qubits_merge_sorted(self):
        phase, key = multiply_keys(((3, "Z"),), ((1, "X"),))
        assert phase == 1.0
        assert key == ((1, "X"), (3, "Z"))

    def test_multi_qubit_phase_accumulates(self):
        left = ((0, "X"), (1, "Y"))
        right = ((0, "Y"), (1, "X"))
        phase, key = multiply_keys(left, right)
        assert phase == pytest.approx(1j * -1j)
        assert key == ((0, "Z"), (1, "Z"))


class TestLadderAlgebra:
    """Canonical anticommutation relations of the mapped operators."""

    def anticommutator(self, first, second):
        total = multiply_operators(first, second)
        for key, coeff in multiply_operators(second, first).items():
            total[key] = total.get(key, 0.0) + coeff
        return total

    def test_same_mode_gives_identity(self):
        for mode in (0, 2):
            result = self.anticommutator(
                ladder_operator(mode, create=False),
                ladder_operator(mode, create=True),
            )
            assert result.pop(()) == pytest.approx(1.0)
            assert operator_norm(result) < 1e-15

    def test_distinct_modes_anticommute(self):
        result = self.anticommutator(
            ladder_operator(0, create=False), ladder_operator(3, create=True)
        )
        assert operator_norm(result) < 1e-15

    def test_two_annihilators_anticommute(self):
        result = self.anticommutator(
            ladder_operator(1, create=False), ladder_operator(2, create=False)
        )
        assert operator_norm(result) < 1e-15

    def test_number_operator_is_diagonal(self):
        number = multiply_operators(
            ladder_operator(1, create=True), ladder_operator(1, create=False)
        )
        assert number[()] == pytest.approx(0.5)
        assert number[((1, "Z"),)] == pytest.approx(-0.5)


class TestQubitHamiltonian:
    """Mapped molecular operators."""

    def test_h2_term_count(self, h2_pipeline):
        assert len(h2_pipeline.operator) == 15

    def test_coefficients_are_real_floats(self, h2_pipeline):
        for coeff in h2_pipeline.operator.values():
            assert isinstance(coeff, float)

    def test_dense_matrix_hermitian(self, h2_pipeline):
        matrix = dense_matrix(h2_pipeline.operator, 4)
        assert np.allclose(matrix, matrix.conj().T, atol=1e-12)

    def test_full_space_minimum_matches_sector_fci(self, h2_pipeline):
        # Particle number is conserved, and for this molecule the global
        # ground state lives in the half-filled sector.
        matrix = dense_matrix(h2_pipeline.operator, 4)
        lowest = float(np.linalg.eigvalsh(matrix)[0])
        assert lowest == pytest.approx(h2_pipeline.fci_energy, abs=1e-10)

    def test_commutes_with_particle_number(self, h2_pipeline):
        number = {(): 2.0}
        for qubit in range(4):
            number[((qubit, "Z"),)] = -0.5
        forward = multiply_operators(h2_pipeline.operator, number)
        backward = multiply_operators(number, h2_pipeline.operator)
        assert operator_norm(subtract(forward, backward)) < 1e-10

    def test_identity_collects_nuclear_and_trace_parts(self, h2_pipeline):
        matrix = dense_matrix(h2_pipeline.operator, 4)
        trace_mean = float(np.trace(matrix).real) / 16.0
        assert h2_pipeline.operator[()] == pytest.approx(trace_mean, abs=1e-12)

    def test_noninteracting_two_level_map(self):
        # One spatial orbital with h00 = -2 contributes, per spin,
        # h00 (I - Z_k)/2, so the operator is -2 I + Z0 + Z1 plus the
        # constant shift.
        core = np.array([[-2.0]])
        eri = np.zeros((1, 1, 1, 1))
        operator = qubit_hamiltonian(core, eri, 0.5)
        assert operator[()] == pytest.approx(-2.0 + 0.5)
        assert operator[((0, "Z"),)] == pytest.approx(1.0)
        assert operator[((1, "Z"),)] == pytest.approx(1.0)


class TestSerialization:
    """Text output format shared with downstream consumers."""

    def test_coefficient_format(self):
        assert format_coefficient(1.0) == "1.0000000000000000e0"
        assert format_coefficient(-0.25) == "-2.5000000000000000e-1"
        assert format_coefficient(1234.5) == "1.2345000000000000e3"

    def test_coefficient_round_trip(self):
        for value in (0.1, -1.1059333523, 3e-12, 7.25e4):
            assert float(format_coefficient(value)) == value

    def test_terms_sorted_and_headers_prefixed(self):
        operator = {
            ((0, "Z"), (2, "X")): 0.5,
            (): -1.5,
            ((0, "X"),): 0.25,
        }
        text = serialize_hamiltonian(operator, header_lines=["generated"])
        lines = text.splitlines()
        assert lines[0] == "# generated"
        assert lines[1] == "-1.5000000000000000e0"
        assert lines[2] == "2.5000000000000000e-1 X0"
        assert lines[3] == "5.0000000000000000e-1 Z0 X2"
        assert text.endswith("\n")

    def test_factor_order_within_line_follows_key(self, h2_pipeline):
        text = serialize_hamiltonian(h2_pipeline.operator)
        for line in text.splitlines():
            factors = line.split()[1:]
            indices = [int(f[1:]) for f in factors]
            assert indices == sorted(indices)


class TestDenseMatrix:
    def test_single_z_lsb_convention(self):
        matrix = dense_matrix({((0, "Z"),): 1.0}, 2)
        assert np.allclose(np.diag(matrix), [1, -1, 1, -1])

    def test_single_x_flips_lsb(self):
        matrix = dense_matrix({((0, "X"),): 1.0}, 2)
        assert matrix[1, 0] == 1.0
        assert matrix[0, 1] == 1.0

    def test_y_phase(self):
        matrix = dense_matrix({((0, "Y"),): 1.0}, 1)
        assert matrix[1, 0] == 1j
        assert matrix[0, 1] == -1j

    def test_out_of_range_qubit_rejected(self):
        with pytest.raises(ValueError, match="outside"):
            dense_matrix({((5, "X"),): 1.0}, 2)
