"""Reversible gate set: NOT, SWAP and polarity-controlled NOT."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence


class GateKind(Enum):
    """Kinds of reversible gates a node register supports."""

    NOT = "not"
    SWAP = "swap"
    CONTROLLED_NOT = "cnot"


@dataclass(frozen=True)
class Control:
    """A control qubit with its polarity.

    A closed control (filled circle) fires when the qubit is 1, an open
    control (empty circle) fires when the qubit is 0.
    """

    qubit: int
    closed: bool = True

    @property
    def value(self) -> int:
        """Basis value the control qubit must hold for the gate to act."""
        return 1 if self.closed else 0

    def describe(self) -> str:
        return f"{'c' if self.closed else 'o'}{self.qubit}"


@dataclass(frozen=True)
class GateOp:
    """One gate in a circuit.

    NOT and CONTROLLED_NOT take one target; SWAP takes two. Any kind may
    carry controls; a CONTROLLED_NOT with no controls acts as NOT and with
    two closed controls it is the Toffoli gate.
    """

    kind: GateKind
    targets: tuple[int, ...]
    controls: tuple[Control, ...] = ()

    def __post_init__(self):
        expected = 2 if self.kind is GateKind.SWAP else 1
        if len(self.targets) != expected:
            raise ValueError(
                f"{self.kind.name} needs {expected} target(s), got {len(self.targets)}"
            )
        if self.kind is GateKind.NOT and self.controls:
            raise ValueError("NOT takes no controls; use CONTROLLED_NOT")

        qubits = self.qubits
        if any(q < 0 for q in qubits):
            raise IndexError(f"Negative qubit index in {self.describe()}")
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"Qubit indices collide in {self.describe()}")

    @property
    def qubits(self) -> tuple[int, ...]:
        """All qubits the gate touches, targets first."""
        return self.targets + tuple(c.qubit for c in self.controls)

    @property
    def is_multi_qubit(self) -> bool:
        return len(self.qubits) > 1

    def validate(self, num_qubits: int) -> None:
        """Check the gate fits a register of the given size."""
        highest = max(self.qubits)
        if highest >= num_qubits:
            raise IndexError(
                f"{self.describe()} uses qubit {highest} but register has {num_qubits}"
            )

    def describe(self) -> str:
        """Short text form, e.g. ``CNOT[c0,o2 -> 3]``."""
        name = {
            GateKind.NOT: "NOT",
            GateKind.SWAP: "SWAP",
            GateKind.CONTROLLED_NOT: "CNOT",
        }[self.kind]
        targets = ",".join(str(t) for t in self.targets)
        if not self.controls:
            return f"{name}[{targets}]"
        controls = ",".join(c.describe() for c in self.controls)
        return f"{name}[{controls} -> {targets}]"


def not_gate(target: int) -> GateOp:
    return GateOp(GateKind.NOT, (target,))


def cnot(control: int, target: int, closed: bool = True) -> GateOp:
    return GateOp(GateKind.CONTROLLED_NOT, (target,), (Control(control, closed),))


def toffoli(control_a: int, control_b: int, target: int) -> GateOp:
    return GateOp(
        GateKind.CONTROLLED_NOT,
        (target,),
        (Control(control_a), Control(control_b)),
    )


def mcx(
    target: int,
    closed: Iterable[int] = (),
    open_: Iterable[int] = (),
) -> GateOp:
    """Multi-controlled NOT with mixed control polarity."""
    controls = tuple(Control(q, True) for q in closed) + tuple(
        Control(q, False) for q in open_
    )
    return GateOp(GateKind.CONTROLLED_NOT, (target,), controls)


def swap(qubit_a: int, qubit_b: int, controls: Sequence[Control] = ()) -> GateOp:
    return GateOp(GateKind.SWAP, (qubit_a, qubit_b), tuple(controls))


@dataclass
class Circuit:
    """An ordered gate program over a fixed number of qubits."""

    num_qubits: int
    ops: list[GateOp] = field(default_factory=list)

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError(f"Circuit needs at least one qubit, got {self.num_qubits}")
        for op in self.ops:
            op.validate(self.num_qubits)

    def __len__(self) -> int:
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    def append(self, op: GateOp) -> "Circuit":
        op.validate(self.num_qubits)
        self.ops.append(op)
        return self

    def extend(self, ops: Iterable[GateOp]) -> "Circuit":
        for op in ops:
            self.append(op)
        return self

    @property
    def multi_qubit_gate_count(self) -> int:
        return sum(1 for op in self.ops if op.is_multi_qubit)

    def inverse(self) -> "Circuit":
        """Every gate here is self-inverse, so the inverse is the reversed program."""
        return Circuit(self.num_qubits, list(reversed(self.ops)))

    def without(self, index: int) -> "Circuit":
        """Copy of the circuit with one gate removed."""
        if not 0 <= index < len(self.ops):
            raise IndexError(f"Gate index {index} out of range for {len(self.ops)} gates")
        return Circuit(self.num_qubits, self.ops[:index] + self.ops[index + 1 :])

    def describe(self) -> list[str]:
        return [op.describe() for op in self.ops]
