"""Periodic Ising spin lattice with checkerboard streaming."""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence, Union

import numpy as np

logger = logging.getLogger(__name__)

Site = Union[int, tuple[int, int]]


class LatticeMode(str, Enum):
    DISCRETE = "discrete"
    ENSEMBLE = "ensemble"


class Color(str, Enum):
    BLACK = "black"
    WHITE = "white"

    @property
    def parity(self) -> int:
        return 0 if self is Color.BLACK else 1


@dataclass(frozen=True)
class NodeInputs:
    """Center spin and neighbor copies streamed into one node.

    1D neighbors are (A, B) = (S[i-1], S[i+1]); 2D neighbors are
    (A, B, C, D) = (S[i,j+1], S[i-1,j], S[i,j-1], S[i+1,j]).
    """

    s: float
    neighbors: tuple[float, ...]


class SpinLattice:
    """1D ring or 2D torus of spin values.

    Discrete lattices hold exactly -1.0 or +1.0 per site. Ensemble lattices
    hold the expected spin in [-1, 1].
    """

    def __init__(self, values: np.ndarray, mode: LatticeMode = LatticeMode.DISCRETE):
        values = np.array(values, dtype=np.float64)
        if values.ndim not in (1, 2):
            raise ValueError(f"Lattice must be 1D or 2D, got shape {values.shape}")
        if any(n < 2 or n % 2 for n in values.shape):
            raise ValueError(
                f"Lattice dimensions must be even for the checkerboard, got {values.shape}"
            )
        self.mode = LatticeMode(mode)
        _check_range(values, self.mode)
        self.values = values

    # -- construction -----------------------------------------------------

    @classmethod
    def ground(
        cls, shape: Sequence[int], mode: LatticeMode = LatticeMode.DISCRETE
    ) -> "SpinLattice":
        """All spins up."""
        return cls(np.ones(tuple(shape)), mode)

    @classmethod
    def from_uniforms(cls, uniforms: np.ndarray) -> "SpinLattice":
        """Discrete lattice with each spin up where its draw is below 0.5."""
        return cls(np.where(np.asarray(uniforms) < 0.5, 1.0, -1.0))

    @classmethod
    def mixed(cls, shape: Sequence[int]) -> "SpinLattice":
        """Ensemble lattice with every site at s = 0 (q = 0.5)."""
        return cls(np.zeros(tuple(shape)), LatticeMode.ENSEMBLE)

    def copy(self) -> "SpinLattice":
        return SpinLattice(self.values.copy(), self.mode)

    # -- geometry ---------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.values.ndim

    @property
    def shape(self) -> tuple[int, ...]:
        return self.values.shape

    @property
    def num_sites(self) -> int:
        return self.values.size

    @property
    def size_label(self) -> str:
        return "x".join(str(n) for n in self.shape)

    @property
    def hardware_nodes(self) -> int:
        """Physical nodes needed when each node serves one black and one white site."""
        return self.num_sites // 2

    def _check_site(self, site: Site) -> tuple[int, ...]:
        index = (site,) if isinstance(site, (int, np.integer)) else tuple(site)
        if len(index) != self.dim:
            raise IndexError(f"Site {site} does not match a {self.dim}D lattice")
        for i, n in zip(index, self.shape):
            if not 0 <= i < n:
                raise IndexError(f"Site {site} out of bounds for shape {self.shape}")
        return index

    def flat_index(self, site: Site) -> int:
        return int(np.ravel_multi_index(self._check_site(site), self.shape))

    def sites(self) -> Iterable[Site]:
        """All sites in row-major order."""
        if self.dim == 1:
            return range(self.shape[0])
        return (tuple(int(v) for v in ij) for ij in np.ndindex(*self.shape))

    def checkerboard_mask(self, color: Color) -> np.ndarray:
        parity = np.indices(self.shape).sum(axis=0) % 2
        return parity == Color(color).parity

    def checkerboard_sites(self, color: Color) -> list[Site]:
        """Sites of one color in row-major order."""
        mask = self.checkerboard_mask(color)
        if self.dim == 1:
            return [int(i) for i in np.flatnonzero(mask)]
        return [(int(i), int(j)) for i, j in np.argwhere(mask)]

    # -- streaming --------------------------------------------------------

    def neighbor_offsets(self) -> list[tuple[int, ...]]:
        if self.dim == 1:
            return [(-1,), (1,)]
        return [(0, 1), (-1, 0), (0, -1), (1, 0)]

    def neighbor_arrays(self) -> list[np.ndarray]:
        """Neighbor values for every site at once, in A, B(, C, D) order."""
        axes = tuple(range(self.dim))
        return [
            np.roll(self.values, tuple(-d for d in offset), axis=axes)
            for offset in self.neighbor_offsets()
        ]

    def stream(self, site: Site) -> NodeInputs:
        index = self._check_site(site)
        neighbors = []
        for offset in self.neighbor_offsets():
            wrapped = tuple((i + d) % n for i, d, n in zip(index, offset, self.shape))
            neighbors.append(float(self.values[wrapped]))
        return NodeInputs(s=float(self.values[index]), neighbors=tuple(neighbors))

    def write_back(self, site: Site, value: float) -> None:
        index = self._check_site(site)
        _check_range(np.asarray([value], dtype=np.float64), self.mode)
        self.values[index] = value

    # -- observables ------------------------------------------------------

    def magnetization(self) -> float:
        return float(self.values.mean())

    def _bond_sum(self) -> float:
        return float(np.sum(self.values * sum(self.neighbor_arrays())))

    def total_energy(self, coupling: float = 1.0) -> float:
        """Sum of on-site energies E_i = -J s_i sum_j s_j; each bond counts twice."""
        if self.mode is not LatticeMode.DISCRETE:
            raise ValueError("total_energy needs a discrete lattice; use expected_energy")
        return -coupling * self._bond_sum()

    def expected_energy(self, coupling: float = 1.0) -> float:
        """Product-state expectation of the same sum for an ensemble lattice."""
        return -coupling * self._bond_sum()

    def energy_per_site(self, coupling: float = 1.0) -> float:
        return self.expected_energy(coupling) / self.num_sites

    def snapshot(self, decimals: int = 4) -> str:
        rows = self.values.reshape(1, -1) if self.dim == 1 else self.values
        if self.mode is LatticeMode.DISCRETE:
            lines = ["".join("+" if v > 0 else "-" for v in row) for row in rows]
        else:
            lines = [" ".join(f"{v:+.{decimals}f}" for v in row) for row in rows]
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return (
            f"SpinLattice(shape={self.shape}, mode={self.mode.value}, "
            f"M={self.magnetization():+.4f})"
        )


def _check_range(values: np.ndarray, mode: LatticeMode) -> None:
    if mode is LatticeMode.DISCRETE:
        if not np.all(np.abs(values) == 1.0):
            raise ValueError("Discrete lattice values must be -1 or +1")
    elif not np.all((values >= -1.0) & (values <= 1.0)):
        raise ValueError("Ensemble lattice values must lie in [-1, 1]")
