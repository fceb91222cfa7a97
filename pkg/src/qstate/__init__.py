"""Statevector engine for a single node's quantum register."""

from .gates import Circuit, Control, GateKind, GateOp, cnot, mcx, not_gate, swap, toffoli
from .register import MAX_QUBITS, QuantumRegister, format_basis, new_register

__all__ = [
    "Circuit",
    "Control",
    "GateKind",
    "GateOp",
    "cnot",
    "mcx",
    "not_gate",
    "swap",
    "toffoli",
    "MAX_QUBITS",
    "QuantumRegister",
    "format_basis",
    "new_register",
]
