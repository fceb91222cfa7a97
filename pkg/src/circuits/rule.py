"""Classical Metropolis acceptance rule for a single spin flip."""

import math
from dataclasses import dataclass
from typing import Sequence

SPIN_VALUES = (-1, 1)


@dataclass(frozen=True)
class IsingParams:
    """Coupling and temperature for a ferromagnetic, field-free Ising model.

    Energies are in units of J and temperatures in units of J/k, with both
    the coupling and the Boltzmann constant fixed to 1.
    """

    temperature: float
    coupling: float = 1.0
    boltzmann: float = 1.0

    def __post_init__(self):
        if not self.temperature > 0:
            raise ValueError(f"Temperature must be positive, got {self.temperature}")
        if self.coupling != 1.0:
            raise ValueError(
                f"Only the ferromagnetic coupling J=+1 is supported, got {self.coupling}"
            )
        if self.boltzmann != 1.0:
            raise ValueError(f"Boltzmann constant is fixed to 1, got {self.boltzmann}")

    def acceptance(self, delta_e: float) -> float:
        """min{1, exp(-dE/kT)} for an energy change in units of J."""
        if delta_e <= 0:
            return 1.0
        return math.exp(-delta_e * self.coupling / (self.boltzmann * self.temperature))

    @property
    def p1(self) -> float:
        """Flip probability for dE = +4J."""
        return self.acceptance(4)

    @property
    def p2(self) -> float:
        """Flip probability for dE = +8J."""
        return self.acceptance(8)


@dataclass(frozen=True)
class AcceptanceSpec:
    """Energy change of a proposed flip and its acceptance probability."""

    delta_e: int
    flip_prob: float


def _check_spin(value: float, name: str) -> int:
    if value not in SPIN_VALUES:
        raise ValueError(f"{name} must be -1 or +1, got {value}")
    return int(value)


def flip_delta_e(s: int, neighbors: Sequence[int]) -> int:
    """Energy change (units of J) from flipping ``s``: dE = 2 s sum(neighbors)."""
    if len(neighbors) not in (2, 4):
        raise ValueError(f"Expected 2 or 4 neighbors, got {len(neighbors)}")
    spin = _check_spin(s, "s")
    total = sum(_check_spin(n, "neighbor") for n in neighbors)
    return 2 * spin * total


def metropolis_flip_prob(
    s: int, neighbors: Sequence[int], params: IsingParams
) -> AcceptanceSpec:
    delta_e = flip_delta_e(s, neighbors)
    return AcceptanceSpec(delta_e=delta_e, flip_prob=params.acceptance(delta_e))
