"""Metropolis node circuits for the 1D and 2D Ising models.

Spin encoding: qubit value S = (s + 1) / 2, so spin-up is |1> and
spin-down is |0>.

1D circuit (qubits A, S, B, P, AN):

    1. CNOT[A, S, B closed -> AN]    AN = 1 when all three spins are up
    2. CNOT[A, S, B open -> AN]      AN = 1 when all three spins are down
    3. CNOT[AN open -> S]            flip S unless the spins are all aligned
    4. CNOT[AN, P closed -> S]       aligned case: flip S on the P branch

2D circuit (qubits A, B, C, D, S, P1, P2, N0, N1, N2), full-adder style:

    1. CNOT[S -> X] for X in A..D    neighbors now hold "disagrees with S"
    2. for X in A..D, increment the counter N2 N1 N0 controlled on X
    3. CNOT[S -> X] for X in A..D    neighbors restored
    4. NOT[S]; CNOT[N1, N2 open -> S]            flip when >= 2 neighbors disagree
    5. CNOT[P1, N0 closed; N1, N2 open -> S]     one disagreeing neighbor: dE = 4J
    6. CNOT[P2 closed; N0, N1, N2 open -> S]     none disagree: dE = 8J

The counter qubits are left holding the neighbor count; they are
re-initialized every iteration.
"""

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..qstate import Circuit, QuantumRegister, cnot, mcx, new_register, not_gate
from .rule import IsingParams

MAX_2D_QUBITS = 12


@dataclass(frozen=True)
class NodeLayout:
    """Role-to-qubit map for one node's register."""

    dim: int
    roles: dict[str, int] = field(hash=False)
    input_roles: tuple[str, ...]
    neighbor_roles: tuple[str, ...]
    probability_roles: tuple[str, ...]
    probability_delta_e: tuple[int, ...]
    ancilla_roles: tuple[str, ...]

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise ValueError(f"dim must be 1 or 2, got {self.dim}")
        if sorted(self.roles.values()) != list(range(len(self.roles))):
            raise ValueError("Role indices must cover 0..num_qubits-1 exactly once")
        if self.dim == 1 and self.num_qubits != 5:
            raise ValueError(f"1D layout must use 5 qubits, got {self.num_qubits}")
        if self.dim == 2 and self.num_qubits > MAX_2D_QUBITS:
            raise ValueError(
                f"2D layout may use at most {MAX_2D_QUBITS} qubits, got {self.num_qubits}"
            )
        named = (
            set(self.input_roles) | set(self.probability_roles) | set(self.ancilla_roles)
        )
        if named != set(self.roles) or "S" not in self.input_roles:
            raise ValueError("Layout roles do not match the declared role groups")
        if len(self.probability_roles) != len(self.probability_delta_e):
            raise ValueError("Each probability qubit needs an energy change")

    @property
    def num_qubits(self) -> int:
        return len(self.roles)

    @property
    def num_inputs(self) -> int:
        """Number of classical spin configurations a node can receive."""
        return 2 ** len(self.input_roles)

    @property
    def spin(self) -> int:
        return self.roles["S"]

    def index(self, role: str) -> int:
        return self.roles[role]

    def probabilities(self, params: IsingParams) -> tuple[float, ...]:
        """Closed-form |P> probabilities, one per probability qubit."""
        return tuple(params.acceptance(de) for de in self.probability_delta_e)

    def input_bits(self, index: int) -> tuple[int, ...]:
        """Spin bits for input ``index``, first input role most significant."""
        width = len(self.input_roles)
        return tuple((index >> (width - 1 - k)) & 1 for k in range(width))

    def input_index(self, bits: Sequence[int]) -> int:
        index = 0
        for bit in bits:
            index = (index << 1) | int(bit)
        return index

    def split_inputs(self, bits: Sequence[int]) -> tuple[int, tuple[int, ...]]:
        """Return (center bit, neighbor bits in neighbor_roles order)."""
        by_role = dict(zip(self.input_roles, bits))
        return by_role["S"], tuple(by_role[r] for r in self.neighbor_roles)


def build_1d_circuit() -> tuple[Circuit, NodeLayout]:
    layout = NodeLayout(
        dim=1,
        roles={"A": 0, "S": 1, "B": 2, "P": 3, "AN": 4},
        input_roles=("A", "S", "B"),
        neighbor_roles=("A", "B"),
        probability_roles=("P",),
        probability_delta_e=(4,),
        ancilla_roles=("AN",),
    )
    a, s, b, p, an = (layout.index(r) for r in ("A", "S", "B", "P", "AN"))

    circuit = Circuit(layout.num_qubits)
    circuit.extend(
        [
            mcx(an, closed=(a, s, b)),
            mcx(an, open_=(a, s, b)),
            cnot(an, s, closed=False),
            mcx(s, closed=(an, p)),
        ]
    )
    return circuit, layout


def build_2d_circuit() -> tuple[Circuit, NodeLayout]:
    layout = NodeLayout(
        dim=2,
        roles={
            "A": 0,
            "B": 1,
            "C": 2,
            "D": 3,
            "S": 4,
            "P1": 5,
            "P2": 6,
            "N0": 7,
            "N1": 8,
            "N2": 9,
        },
        input_roles=("S", "A", "B", "C", "D"),
        neighbor_roles=("A", "B", "C", "D"),
        probability_roles=("P1", "P2"),
        probability_delta_e=(4, 8),
        ancilla_roles=("N0", "N1", "N2"),
    )
    s = layout.index("S")
    p1, p2 = layout.index("P1"), layout.index("P2")
    n0, n1, n2 = (layout.index(r) for r in ("N0", "N1", "N2"))
    neighbors = [layout.index(r) for r in layout.neighbor_roles]

    circuit = Circuit(layout.num_qubits)
    circuit.extend(cnot(s, x) for x in neighbors)
    for x in neighbors:
        circuit.extend(
            [
                mcx(n2, closed=(x, n0, n1)),
                mcx(n1, closed=(x, n0)),
                cnot(x, n0),
            ]
        )
    circuit.extend(cnot(s, x) for x in neighbors)
    circuit.extend(
        [
            not_gate(s),
            mcx(s, open_=(n1, n2)),
            mcx(s, closed=(p1, n0), open_=(n1, n2)),
            mcx(s, closed=(p2,), open_=(n0, n1, n2)),
        ]
    )
    return circuit, layout


def build_circuit(dim: int) -> tuple[Circuit, NodeLayout]:
    if dim == 1:
        return build_1d_circuit()
    if dim == 2:
        return build_2d_circuit()
    raise ValueError(f"dim must be 1 or 2, got {dim}")


def prepare_node_register(
    layout: NodeLayout,
    input_bits: Sequence[int],
    probabilities: Sequence[float],
) -> QuantumRegister:
    """Register with classical spins, |P> qubits prepared and ancillas at |0>."""
    register = new_register(layout.num_qubits)
    for role, bit in zip(layout.input_roles, input_bits, strict=True):
        register.set_basis(layout.index(role), int(bit))
    for role, prob in zip(layout.probability_roles, probabilities, strict=True):
        register.prepare_superposition(layout.index(role), prob)
    return register


def prepare_ensemble_register(
    layout: NodeLayout,
    input_probs: Sequence[float],
    probabilities: Sequence[float],
) -> QuantumRegister:
    """Register whose spin qubits are independent superpositions.

    ``input_probs`` holds q = (s + 1) / 2 for each input role.
    """
    register = new_register(layout.num_qubits)
    for role, q in zip(layout.input_roles, input_probs, strict=True):
        register.prepare_superposition(layout.index(role), float(np.clip(q, 0.0, 1.0)))
    for role, prob in zip(layout.probability_roles, probabilities, strict=True):
        register.prepare_superposition(layout.index(role), prob)
    return register
