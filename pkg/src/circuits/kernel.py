"""Compiled node kernel: the circuit's output statistics as lookup tables.

Lattice sweeps update thousands of nodes per pass. Instead of building a
register per node, the kernel runs the statevector engine once per
classical input and caches the resulting P(S'=1), so a whole checkerboard
color can be updated with array indexing.
"""

import itertools
import logging
from functools import lru_cache
from typing import Sequence

import numpy as np

from ..qstate import Circuit
from .builders import NodeLayout, prepare_node_register
from .rule import IsingParams

logger = logging.getLogger(__name__)

# Flip-even parts of the output spin below this are treated as zero
SYMMETRY_TOLERANCE = 1e-12


class NodeKernel:
    """A node circuit compiled against its layout."""

    def __init__(self, circuit: Circuit, layout: NodeLayout):
        if circuit.num_qubits != layout.num_qubits:
            raise ValueError(
                f"Circuit has {circuit.num_qubits} qubits, layout has {layout.num_qubits}"
            )
        self.circuit = circuit
        self.layout = layout
        self.outcomes = self._compile_outcomes()
        self._table_cache: dict[float, np.ndarray] = {}

        # Bit patterns of every probability-qubit branch, shape (branches, n_prob)
        n_prob = len(layout.probability_roles)
        self._branches = np.array(
            list(itertools.product((0, 1), repeat=n_prob)), dtype=bool
        ).reshape(-1, n_prob)

    def _compile_outcomes(self) -> np.ndarray:
        """S' bit for every (spin input, probability-qubit basis branch).

        The gates permute basis states, so with all qubits classical the
        output spin is a definite bit.
        """
        layout = self.layout
        n_prob = len(layout.probability_roles)
        branches = list(itertools.product((0, 1), repeat=n_prob))
        outcomes = np.zeros((layout.num_inputs, len(branches)), dtype=np.uint8)

        for index in range(layout.num_inputs):
            bits = layout.input_bits(index)
            for b, branch in enumerate(branches):
                register = prepare_node_register(layout, bits, [float(v) for v in branch])
                register.apply_circuit(self.circuit)
                outcomes[index, b] = round(register.prob_one(layout.spin))

        logger.debug(
            f"Compiled {layout.dim}D kernel: {layout.num_inputs} inputs x "
            f"{len(branches)} probability branches"
        )
        return outcomes

    def prob_one_table(self, params: IsingParams) -> np.ndarray:
        """P(S'=1) per classical input at the given temperature.

        Each entry comes from the full statevector: prepare the register,
        run the circuit, read prob_one of S.
        """
        key = params.temperature
        if key not in self._table_cache:
            probabilities = self.layout.probabilities(params)
            table = np.empty(self.layout.num_inputs)
            for index in range(self.layout.num_inputs):
                register = prepare_node_register(
                    self.layout, self.layout.input_bits(index), probabilities
                )
                register.apply_circuit(self.circuit)
                table[index] = register.prob_one(self.layout.spin)
            self._table_cache[key] = table
        return self._table_cache[key]

    def prob_one_for(
        self, input_index: np.ndarray, probabilities: Sequence[np.ndarray]
    ) -> np.ndarray:
        """P(S'=1) per node when each node has its own |P> probabilities.

        Args:
            input_index: Classical input index per node
            probabilities: One array per probability qubit, same length as
                ``input_index``

        Returns:
            Array of output spin-up probabilities
        """
        input_index = np.asarray(input_index)
        weights = np.ones((input_index.size, len(self._branches)))
        for k, prob in enumerate(probabilities):
            prob = np.asarray(prob, dtype=float).reshape(-1, 1)
            weights *= np.where(self._branches[:, k], prob, 1.0 - prob)
        return np.sum(weights * self.outcomes[input_index], axis=1)

    def ensemble_prob_one(
        self, input_probs: Sequence[np.ndarray], params: IsingParams
    ) -> np.ndarray:
        """Expected P(S'=1) when every spin qubit is an independent Bernoulli(q).

        Args:
            input_probs: One array of q values per input role, in
                ``layout.input_roles`` order
            params: Temperature for the |P> qubits

        Returns:
            Array of q' values
        """
        odd, even = self._spin_parts(params)
        bits = _input_bit_matrix(len(self.layout.input_roles))
        weights = np.ones((np.asarray(input_probs[0]).size, bits.shape[0]))
        for k, q in enumerate(input_probs):
            q = np.asarray(q, dtype=float).reshape(-1, 1)
            weights *= np.where(bits[:, k], q, 1.0 - q)

        # Input x and its global flip sit at mirrored positions of the table
        half = bits.shape[0] // 2
        lower, upper = weights[:, :half], weights[:, half:][:, ::-1]
        spin = (lower - upper) @ odd + (lower + upper) @ even
        return 0.5 + 0.5 * spin

    def _spin_parts(self, params: IsingParams) -> tuple[np.ndarray, np.ndarray]:
        """Expected output spin split into flip-odd and flip-even parts.

        For a flip-symmetric rule the even part is rounding noise and is
        zeroed, so the all-q=0.5 ensemble maps exactly onto itself.
        """
        spin = 2.0 * self.prob_one_table(params) - 1.0
        half = spin.size // 2
        lower, upper = spin[:half], spin[half:][::-1]
        odd = (lower - upper) / 2.0
        even = (lower + upper) / 2.0
        even[np.abs(even) < SYMMETRY_TOLERANCE] = 0.0
        return odd, even


@lru_cache(maxsize=None)
def _input_bit_matrix(width: int) -> np.ndarray:
    """Row k holds the bits of input index k, most significant first."""
    return np.array(list(itertools.product((0, 1), repeat=width)), dtype=bool)
