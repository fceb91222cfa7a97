"""Tests for the gate set and the statevector register."""

import math

import numpy as np
import pytest

from src.qstate import (
    Circuit,
    Control,
    GateKind,
    GateOp,
    QuantumRegister,
    cnot,
    format_basis,
    mcx,
    new_register,
    not_gate,
    swap,
    toffoli,
)


def basis_register(bits: str) -> QuantumRegister:
    register = new_register(len(bits))
    for q, bit in enumerate(bits):
        register.set_basis(q, int(bit))
    return register


def random_gate(rng: np.random.Generator, num_qubits: int) -> GateOp:
    qubits = [int(q) for q in rng.permutation(num_qubits)]
    kinds = ["not"] if num_qubits == 1 else ["not", "swap", "cnot"]
    kind = kinds[int(rng.integers(len(kinds)))]
    if kind == "not":
        return not_gate(qubits[0])
    if kind == "swap":
        n_controls = int(rng.integers(0, num_qubits - 1))
        controls = [Control(q, bool(rng.integers(2))) for q in qubits[2 : 2 + n_controls]]
        return swap(qubits[0], qubits[1], controls)

    controls = qubits[1 : 1 + int(rng.integers(0, num_qubits))]
    polarity = rng.integers(2, size=len(controls))
    return mcx(
        qubits[0],
        closed=[q for q, c in zip(controls, polarity) if c],
        open_=[q for q, c in zip(controls, polarity) if not c],
    )


def random_circuit(rng: np.random.Generator, num_qubits: int, length: int) -> Circuit:
    return Circuit(num_qubits, [random_gate(rng, num_qubits) for _ in range(length)])


def random_state(rng: np.random.Generator, num_qubits: int) -> QuantumRegister:
    size = 2**num_qubits
    return QuantumRegister.from_amplitudes(rng.normal(size=size) + 1j * rng.normal(size=size))


class TestConstruction:
    def test_single_qubit(self):
        np.testing.assert_array_equal(new_register(1).amplitudes, [1, 0])

    def test_two_qubits(self):
        np.testing.assert_array_equal(new_register(2).amplitudes, [1, 0, 0, 0])

    @pytest.mark.parametrize("n", [0, 17, -1])
    def test_out_of_range(self, n):
        with pytest.raises(ValueError):
            new_register(n)

    def test_from_amplitudes_normalizes(self):
        register = QuantumRegister.from_amplitudes([3, 4])
        assert register.norm() == pytest.approx(1.0, abs=1e-12)
        assert register.prob_one(0) == pytest.approx(16 / 25)

    def test_from_amplitudes_rejects_bad_sizes(self):
        with pytest.raises(ValueError):
            QuantumRegister.from_amplitudes([1, 0, 0])
        with pytest.raises(ValueError):
            QuantumRegister.from_amplitudes([0, 0])

    def test_amplitudes_are_read_only(self):
        with pytest.raises(ValueError):
            new_register(1).amplitudes[0] = 0

    def test_format_basis(self):
        assert format_basis(1, 2) == "01"
        assert format_basis(6, 3) == "110"


class TestSetBasis:
    def test_flip_on(self):
        register = new_register(2)
        register.set_basis(1, 1)
        assert register.basis_index() == 1

    def test_identity(self):
        register = new_register(1)
        register.set_basis(0, 0)
        np.testing.assert_array_equal(register.amplitudes, [1, 0])

    def test_superposition_rejected(self):
        register = new_register(1)
        register.prepare_superposition(0, 0.5)
        with pytest.raises(ValueError, match="superposition"):
            register.set_basis(0, 1)

    def test_bad_index(self):
        with pytest.raises(IndexError):
            new_register(2).set_basis(2, 1)


class TestPrepareSuperposition:
    def test_p_one(self):
        register = new_register(1)
        register.prepare_superposition(0, 1.0)
        np.testing.assert_allclose(register.amplitudes, [0, 1], atol=1e-15)

    def test_p_zero(self):
        register = new_register(1)
        register.prepare_superposition(0, 0.0)
        np.testing.assert_allclose(register.amplitudes, [1, 0], atol=1e-15)

    def test_boltzmann_probability(self):
        p = math.exp(-4 / 4)
        register = new_register(1)
        register.prepare_superposition(0, p)
        np.testing.assert_allclose(
            register.amplitudes, [math.sqrt(1 - p), math.sqrt(p)], atol=1e-15
        )
        assert np.all(register.amplitudes.imag == 0)

    def test_leaves_other_qubits(self):
        register = basis_register("10")
        register.prepare_superposition(1, 0.25)
        assert register.prob_one(0) == pytest.approx(1.0)
        assert register.prob_one(1) == pytest.approx(0.25)

    @pytest.mark.parametrize("p", [-0.1, 1.1])
    def test_probability_out_of_range(self, p):
        with pytest.raises(ValueError):
            new_register(1).prepare_superposition(0, p)

    def test_qubit_not_zero(self):
        register = basis_register("1")
        with pytest.raises(ValueError):
            register.prepare_superposition(0, 0.5)


class TestGates:
    def test_cnot(self):
        register = basis_register("10")
        register.apply_gate(cnot(0, 1))
        assert format_basis(register.basis_index(), 2) == "11"

    def test_toffoli(self):
        register = basis_register("110")
        register.apply_gate(toffoli(0, 1, 2))
        assert format_basis(register.basis_index(), 3) == "111"

        register = basis_register("100")
        register.apply_gate(toffoli(0, 1, 2))
        assert format_basis(register.basis_index(), 3) == "100"

    def test_open_control(self):
        register = basis_register("00")
        register.apply_gate(cnot(0, 1, closed=False))
        assert format_basis(register.basis_index(), 2) == "01"

    def test_mixed_polarity(self):
        gate = mcx(2, closed=(0,), open_=(1,))
        for bits, expected in [("100", "101"), ("110", "110"), ("000", "000")]:
            register = basis_register(bits)
            register.apply_gate(gate)
            assert format_basis(register.basis_index(), 3) == expected

    def test_swap(self):
        register = basis_register("10")
        register.apply_gate(swap(0, 1))
        assert format_basis(register.basis_index(), 2) == "01"

    def test_controlled_not_without_controls_is_not(self):
        gate = GateOp(GateKind.CONTROLLED_NOT, (0,))
        register = basis_register("0")
        register.apply_gate(gate)
        assert register.basis_index() == 1

    def test_index_collision(self):
        with pytest.raises(ValueError):
            cnot(1, 1)
        with pytest.raises(ValueError):
            swap(0, 0)

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            new_register(2).apply_gate(cnot(0, 2))

    def test_describe(self):
        assert mcx(3, closed=(0,), open_=(2,)).describe() == "CNOT[c0,o2 -> 3]"
        assert not_gate(1).describe() == "NOT[1]"


class TestCircuits:
    def test_empty_circuit(self):
        register = basis_register("101")
        register.apply_circuit(Circuit(3))
        assert format_basis(register.basis_index(), 3) == "101"

    def test_double_not(self):
        register = basis_register("1")
        register.apply_circuit(Circuit(1, [not_gate(0), not_gate(0)]))
        assert register.basis_index() == 1

    @pytest.mark.parametrize("index", range(4))
    def test_double_cnot(self, index):
        register = basis_register(format_basis(index, 2))
        register.apply_circuit(Circuit(2, [cnot(0, 1), cnot(0, 1)]))
        assert register.basis_index() == index

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            new_register(2).apply_circuit(Circuit(3))

    def test_circuit_validates_ops(self):
        with pytest.raises(IndexError):
            Circuit(2, [cnot(0, 3)])

    def test_without(self):
        circuit = Circuit(2, [not_gate(0), cnot(0, 1)])
        assert circuit.without(0).ops == [cnot(0, 1)]
        with pytest.raises(IndexError):
            circuit.without(2)


class TestProbOne:
    def test_certain(self):
        assert basis_register("1").prob_one(0) == 1.0

    def test_amplitude_squared(self):
        register = QuantumRegister.from_amplitudes([math.sqrt(0.75), math.sqrt(0.25)])
        assert register.prob_one(0) == pytest.approx(0.25, abs=1e-15)

    def test_zero(self):
        assert new_register(2).prob_one(1) == 0.0

    def test_bad_index(self):
        with pytest.raises(IndexError):
            new_register(2).prob_one(5)


class TestMeasure:
    def make(self) -> QuantumRegister:
        return QuantumRegister.from_amplitudes([math.sqrt(0.75), math.sqrt(0.25)])

    def test_below_probability_gives_one(self):
        register = self.make()
        assert register.measure_qubit(0, 0.20) == 1
        np.testing.assert_allclose(register.amplitudes, [0, 1], atol=1e-15)

    def test_above_probability_gives_zero(self):
        register = self.make()
        assert register.measure_qubit(0, 0.30) == 0
        np.testing.assert_allclose(register.amplitudes, [1, 0], atol=1e-15)

    @pytest.mark.parametrize("u", [0.0, 0.5, 0.999999])
    def test_certain_outcome(self, u):
        assert basis_register("1").measure_qubit(0, u) == 1

    @pytest.mark.parametrize("u", [-0.01, 1.0])
    def test_u_out_of_range(self, u):
        with pytest.raises(ValueError):
            self.make().measure_qubit(0, u)

    def test_collapse_keeps_norm(self):
        rng = np.random.default_rng(3)
        register = random_state(rng, 4)
        register.measure_qubit(2, 0.5)
        assert register.norm() == pytest.approx(1.0, abs=1e-12)


class TestProperties:
    def test_norm_preservation(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            n = int(rng.integers(1, 7))
            register = random_state(rng, n)
            register.apply_circuit(random_circuit(rng, n, int(rng.integers(1, 101))))
            assert abs(register.norm() - 1.0) < 1e-12

    @pytest.mark.parametrize("num_qubits", [1, 2, 3, 4, 5, 6])
    def test_gates_permute_basis_states(self, num_qubits):
        rng = np.random.default_rng(num_qubits)
        for _ in range(10):
            gate = random_gate(rng, num_qubits)
            images = set()
            for index in range(2**num_qubits):
                register = basis_register(format_basis(index, num_qubits))
                register.apply_gate(gate)
                image = register.basis_index()
                assert image is not None
                images.add(image)
            assert len(images) == 2**num_qubits

    def test_reversibility(self):
        rng = np.random.default_rng(1)
        for _ in range(10):
            register = random_state(rng, 5)
            original = register.amplitudes.copy()
            circuit = random_circuit(rng, 5, 50)
            register.apply_circuit(circuit)
            register.apply_circuit(circuit.inverse())
            np.testing.assert_allclose(register.amplitudes, original, atol=1e-12)

    def test_measurement_frequency(self):
        p = 0.3
        grid = (np.arange(1000) + 0.5) / 1000
        outcomes = []
        for u in grid:
            register = new_register(1)
            register.prepare_superposition(0, p)
            outcomes.append(register.measure_qubit(0, u))
        assert np.mean(outcomes) == pytest.approx(p, abs=1e-3)
