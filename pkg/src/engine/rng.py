"""Counter-based random draws keyed by (seed, stream, temperature, sweep, site)."""

from enum import IntEnum

import numpy as np

MAX_SEED = 2**64 - 1


class Stream(IntEnum):
    UPDATE = 0
    GATE_P1 = 1
    GATE_P2 = 2
    INIT = 3


class CounterRNG:
    """Uniform draws that depend only on their coordinates.

    Each (stream, temperature index, sweep) triple selects an independent
    Philox counter block; site ``k`` always reads element ``k`` of that
    block. Results are therefore independent of update order and threading.
    """

    def __init__(self, seed: int):
        if not 0 <= seed <= MAX_SEED:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = int(seed)

    def uniforms(
        self, stream: Stream, size: int, sweep: int = 0, temp_index: int = 0
    ) -> np.ndarray:
        """``size`` uniforms in [0, 1) for one block."""
        bit_generator = np.random.Philox(
            key=self.seed, counter=[0, int(stream), int(sweep), int(temp_index)]
        )
        return np.random.Generator(bit_generator).random(size)

    def site_stream(self, num_sites: int, sweep: int, temp_index: int) -> "SiteStream":
        return SiteStream(self, num_sites, sweep, temp_index)


class SiteStream:
    """Per-site draws for one sweep at one temperature, generated lazily."""

    def __init__(self, rng: CounterRNG, num_sites: int, sweep: int, temp_index: int):
        self._rng = rng
        self.num_sites = num_sites
        self.sweep = sweep
        self.temp_index = temp_index
        self._blocks: dict[Stream, np.ndarray] = {}

    def draws(self, stream: Stream = Stream.UPDATE) -> np.ndarray:
        if stream not in self._blocks:
            self._blocks[stream] = self._rng.uniforms(
                stream, self.num_sites, self.sweep, self.temp_index
            )
        return self._blocks[stream]

    def u(self, site_index: int, stream: Stream = Stream.UPDATE) -> float:
        return float(self.draws(stream)[site_index])
