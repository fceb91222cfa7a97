"""Dense statevector for one node's quantum register."""

from typing import Optional, Sequence

import numpy as np

from .gates import Circuit, GateKind, GateOp

MAX_QUBITS = 16

# Probability mass below this is treated as exactly zero when checking
# that a qubit holds a classical value.
CLASSICAL_TOLERANCE = 1e-12


def format_basis(index: int, num_qubits: int) -> str:
    """Ket label for a basis index, qubit 0 written first."""
    return format(index, f"0{num_qubits}b")


class QuantumRegister:
    """Complex statevector over ``num_qubits`` qubits.

    Basis index ``k`` corresponds to the bit string ``q0 q1 ... q(n-1)``
    read as a binary number, so qubit 0 is the most significant bit.
    Internally the amplitudes are viewed as an ``(2,) * n`` tensor where
    axis ``q`` is qubit ``q``.
    """

    def __init__(self, num_qubits: int):
        if not 1 <= num_qubits <= MAX_QUBITS:
            raise ValueError(
                f"num_qubits must be between 1 and {MAX_QUBITS}, got {num_qubits}"
            )
        self._num_qubits = num_qubits
        self._amplitudes = np.zeros(2**num_qubits, dtype=np.complex128)
        self._amplitudes[0] = 1.0

    @classmethod
    def from_amplitudes(cls, amplitudes: Sequence[complex]) -> "QuantumRegister":
        """Build a register from raw amplitudes, normalizing them."""
        values = np.asarray(amplitudes, dtype=np.complex128)
        num_qubits = int(np.log2(values.size)) if values.size else 0
        if values.ndim != 1 or 2**num_qubits != values.size:
            raise ValueError(f"Amplitude count {values.size} is not a power of two")
        norm = np.linalg.norm(values)
        if norm == 0:
            raise ValueError("Cannot normalize an all-zero amplitude vector")

        register = cls(num_qubits)
        register._amplitudes = values / norm
        return register

    @property
    def num_qubits(self) -> int:
        return self._num_qubits

    @property
    def amplitudes(self) -> np.ndarray:
        """Read-only view of the amplitudes."""
        view = self._amplitudes.view()
        view.flags.writeable = False
        return view

    def copy(self) -> "QuantumRegister":
        clone = QuantumRegister(self._num_qubits)
        clone._amplitudes = self._amplitudes.copy()
        return clone

    def norm(self) -> float:
        return float(np.sum(np.abs(self._amplitudes) ** 2))

    def basis_index(self) -> Optional[int]:
        """Index of the basis state if the register is in one, else None."""
        probs = np.abs(self._amplitudes) ** 2
        index = int(np.argmax(probs))
        if abs(probs[index] - 1.0) > CLASSICAL_TOLERANCE:
            return None
        return index

    def __repr__(self) -> str:
        index = self.basis_index()
        if index is not None:
            return f"QuantumRegister(|{format_basis(index, self._num_qubits)}>)"
        return f"QuantumRegister(num_qubits={self._num_qubits}, superposition)"

    # -- indexing helpers -------------------------------------------------

    def _tensor(self) -> np.ndarray:
        return self._amplitudes.reshape((2,) * self._num_qubits)

    def _check_qubit(self, qubit: int) -> None:
        if not 0 <= qubit < self._num_qubits:
            raise IndexError(
                f"Qubit {qubit} out of range for {self._num_qubits}-qubit register"
            )

    def _index(self, fixed: dict[int, int]) -> tuple:
        index: list = [slice(None)] * self._num_qubits
        for qubit, value in fixed.items():
            index[qubit] = value
        return tuple(index)

    # -- state preparation ------------------------------------------------

    def prob_one(self, qubit: int) -> float:
        """Probability of measuring ``qubit`` as 1; the state is untouched."""
        self._check_qubit(qubit)
        ones = self._tensor()[self._index({qubit: 1})]
        return float(np.sum(np.abs(ones) ** 2))

    def set_basis(self, qubit: int, bit: int) -> None:
        """Force a qubit that currently holds a classical value to ``bit``."""
        self._check_qubit(qubit)
        if bit not in (0, 1):
            raise ValueError(f"bit must be 0 or 1, got {bit}")

        p_one = self.prob_one(qubit)
        if CLASSICAL_TOLERANCE < p_one < 1.0 - CLASSICAL_TOLERANCE:
            raise ValueError(
                f"Qubit {qubit} is in superposition (P(1)={p_one:.6g}); "
                "set_basis needs a classical value"
            )
        if round(p_one) != bit:
            self.apply_gate(GateOp(GateKind.NOT, (qubit,)))

    def prepare_superposition(self, qubit: int, prob_one: float) -> None:
        """Rotate a |0> qubit to sqrt(1-P)|0> + sqrt(P)|1>.

        The caller passes the probability P, not the amplitude.
        """
        self._check_qubit(qubit)
        if not 0.0 <= prob_one <= 1.0:
            raise ValueError(f"prob_one must lie in [0, 1], got {prob_one}")
        if self.prob_one(qubit) > CLASSICAL_TOLERANCE:
            raise ValueError(f"Qubit {qubit} must be |0> before preparing |P>")

        psi = self._tensor()
        zero = self._index({qubit: 0})
        one = self._index({qubit: 1})
        psi[one] = np.sqrt(prob_one) * psi[zero]
        psi[zero] = np.sqrt(1.0 - prob_one) * psi[zero]

    # -- evolution --------------------------------------------------------

    def apply_gate(self, op: GateOp) -> None:
        """Apply a basis-permuting gate in place."""
        op.validate(self._num_qubits)
        psi = self._tensor()
        fixed = {c.qubit: c.value for c in op.controls}

        if op.kind is GateKind.SWAP:
            a, b = op.targets
            left = self._index({**fixed, a: 0, b: 1})
            right = self._index({**fixed, a: 1, b: 0})
        else:
            (target,) = op.targets
            left = self._index({**fixed, target: 0})
            right = self._index({**fixed, target: 1})

        psi[left], psi[right] = psi[right].copy(), psi[left].copy()

    def apply_circuit(self, circuit: Circuit) -> None:
        if circuit.num_qubits != self._num_qubits:
            raise ValueError(
                f"Circuit has {circuit.num_qubits} qubits, "
                f"register has {self._num_qubits}"
            )
        for op in circuit.ops:
            self.apply_gate(op)

    def measure_qubit(self, qubit: int, u: float) -> int:
        """Destructively measure ``qubit`` using the uniform draw ``u``.

        The outcome is 1 exactly when ``u < prob_one(qubit)``; the state then
        collapses onto the outcome and is renormalized.
        """
        if not 0.0 <= u < 1.0:
            raise ValueError(f"u must lie in [0, 1), got {u}")
        p_one = self.prob_one(qubit)
        outcome = 1 if u < p_one else 0

        psi = self._tensor()
        psi[self._index({qubit: 1 - outcome})] = 0.0
        self._amplitudes /= np.linalg.norm(self._amplitudes)
        return outcome


def new_register(num_qubits: int) -> QuantumRegister:
    """Register of ``num_qubits`` qubits in |0...0>."""
    return QuantumRegister(num_qubits)
