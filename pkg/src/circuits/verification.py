"""Exhaustive truth-table checks of node circuits against the Metropolis rule."""

from dataclasses import dataclass, field
from typing import Optional

import pandas as pd

from ..qstate import Circuit
from .builders import NodeLayout, prepare_node_register
from .rule import IsingParams, metropolis_flip_prob

DEFAULT_TOLERANCE = 1e-10

UP, DOWN = "↑", "↓"


def arrows(bits) -> str:
    return "".join(UP if b else DOWN for b in bits)


def _spin(bit: int) -> int:
    return 1 if bit else -1


@dataclass
class VerificationRow:
    """Result for one classical input.

    ``expected_prob`` and ``observed_prob`` are both P(S'=1), the spin-up
    probability of the output qubit.
    """

    input_bits: str
    delta_e: int
    flip_prob: float
    expected_prob: float
    observed_prob: float
    neighbors_preserved: bool
    probabilities_preserved: bool
    tolerance: float = DEFAULT_TOLERANCE

    @property
    def abs_error(self) -> float:
        return abs(self.observed_prob - self.expected_prob)

    @property
    def passed(self) -> bool:
        return (
            self.abs_error <= self.tolerance
            and self.neighbors_preserved
            and self.probabilities_preserved
        )


@dataclass
class VerificationReport:
    """Per-input verification results for one circuit at one temperature."""

    dim: int
    temperature: float
    gate_count: int
    multi_qubit_gate_count: int
    rows: list[VerificationRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    @property
    def failures(self) -> list[VerificationRow]:
        return [row for row in self.rows if not row.passed]

    def to_frame(self) -> pd.DataFrame:
        """Rows as a DataFrame with the report CSV columns."""
        return pd.DataFrame(
            {
                "temperature": [self.temperature] * len(self.rows),
                "input_bits": [row.input_bits for row in self.rows],
                "expected_prob": [row.expected_prob for row in self.rows],
                "observed_prob": [row.observed_prob for row in self.rows],
                "abs_error": [row.abs_error for row in self.rows],
                "pass": [row.passed for row in self.rows],
            }
        )


def verify_circuit(
    circuit: Circuit,
    layout: NodeLayout,
    params: IsingParams,
    tolerance: float = DEFAULT_TOLERANCE,
) -> VerificationReport:
    """Run every classical input through the circuit and compare with the rule.

    For each input the register is initialized, the |P> qubits prepared from
    ``params``, the circuit applied, and P(S'=1) compared with the Metropolis
    expectation. Neighbor qubits must come out unchanged and the |P> qubit
    marginals must be untouched.
    """
    if circuit.num_qubits != layout.num_qubits:
        raise ValueError(
            f"Circuit has {circuit.num_qubits} qubits, layout has {layout.num_qubits}"
        )
    probabilities = layout.probabilities(params)
    report = VerificationReport(
        dim=layout.dim,
        temperature=params.temperature,
        gate_count=len(circuit),
        multi_qubit_gate_count=circuit.multi_qubit_gate_count,
    )

    for index in range(layout.num_inputs):
        bits = layout.input_bits(index)
        center, neighbor_bits = layout.split_inputs(bits)
        spec = metropolis_flip_prob(
            _spin(center), [_spin(b) for b in neighbor_bits], params
        )
        expected = 1.0 - spec.flip_prob if center else spec.flip_prob

        register = prepare_node_register(layout, bits, probabilities)
        register.apply_circuit(circuit)

        neighbors_ok = all(
            abs(register.prob_one(layout.index(role)) - bit) <= tolerance
            for role, bit in zip(layout.neighbor_roles, neighbor_bits)
        )
        probabilities_ok = all(
            abs(register.prob_one(layout.index(role)) - prob) <= tolerance
            for role, prob in zip(layout.probability_roles, probabilities)
        )
        report.rows.append(
            VerificationRow(
                input_bits="".join(str(b) for b in bits),
                delta_e=spec.delta_e,
                flip_prob=spec.flip_prob,
                expected_prob=expected,
                observed_prob=register.prob_one(layout.spin),
                neighbors_preserved=neighbors_ok,
                probabilities_preserved=probabilities_ok,
                tolerance=tolerance,
            )
        )
    return report


@dataclass
class TruthTableRow:
    """One input of the circuit truth table, in the classical-comparison layout."""

    inputs: str
    center: str
    output_state: str
    outcomes: list[tuple[str, float]]
    probability_label: Optional[str] = None

    @property
    def deterministic(self) -> bool:
        return self.probability_label is None

    def summary(self) -> str:
        """One-line form, e.g. ``↓↓↑ → ↑, p=1``."""
        if self.deterministic:
            spin, _ = self.outcomes[0]
            return f"{self.inputs} → {spin}, p=1"
        flip_prob = next(p for s, p in self.outcomes if s != self.center)
        return f"{self.inputs} → flip with {self.probability_label}={flip_prob:.4f}"


def truth_table(
    circuit: Circuit, layout: NodeLayout, params: IsingParams
) -> list[TruthTableRow]:
    """Describe the circuit output for every classical input.

    Deterministic rows give the output spin; stochastic rows give the
    superposition and both classical outcomes with their probabilities.
    """
    labels = dict(zip(layout.probability_delta_e, layout.probability_roles))
    report = verify_circuit(circuit, layout, params)
    rows = []
    for row in report.rows:
        bits = [int(c) for c in row.input_bits]
        center, _ = layout.split_inputs(bits)
        center_arrow = UP if center else DOWN
        flipped_arrow = DOWN if center else UP
        p_up = row.observed_prob
        p_flip = 1.0 - p_up if center else p_up

        if row.delta_e <= 0 or p_flip in (0.0, 1.0):
            out = UP if p_up >= 0.5 else DOWN
            rows.append(
                TruthTableRow(
                    inputs=arrows(bits),
                    center=center_arrow,
                    output_state=f"|{out}⟩",
                    outcomes=[(out, 1.0)],
                )
            )
            continue

        label = labels[row.delta_e]
        rows.append(
            TruthTableRow(
                inputs=arrows(bits),
                center=center_arrow,
                output_state=f"√{label}|{flipped_arrow}⟩+√(1−{label})|{center_arrow}⟩",
                outcomes=[(center_arrow, 1.0 - p_flip), (flipped_arrow, p_flip)],
                probability_label=f"{label}=e^(-{row.delta_e}/T)",
            )
        )
    return rows
