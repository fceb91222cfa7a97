"""Node updates for the three simulation modes and the checkerboard sweep.

Each mode has a per-site path that builds a node register (or evaluates
the classical rule) for one site, and a vectorized path that updates a
whole checkerboard color from the compiled kernel. Both read the same
per-site draws, so they produce identical lattices.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from ..accuracy import GateError
from ..circuits import (
    IsingParams,
    NodeKernel,
    NodeLayout,
    metropolis_flip_prob,
    prepare_ensemble_register,
    prepare_node_register,
)
from ..lattice import Color, LatticeMode, NodeInputs, Site, SpinLattice
from ..qstate import Circuit
from .rng import SiteStream, Stream

logger = logging.getLogger(__name__)


class SweepMode(str, Enum):
    ONESHOT = "oneshot"
    ENSEMBLE = "ensemble"
    CLASSICAL = "classical"

    @property
    def lattice_mode(self) -> LatticeMode:
        if self is SweepMode.ENSEMBLE:
            return LatticeMode.ENSEMBLE
        return LatticeMode.DISCRETE


@dataclass
class SweepContext:
    """Everything a sweep needs besides the lattice and the draws."""

    mode: SweepMode
    params: IsingParams
    kernel: Optional[NodeKernel] = None
    gate_error: Optional[GateError] = None

    def __post_init__(self):
        self.mode = SweepMode(self.mode)
        if self.mode is not SweepMode.CLASSICAL and self.kernel is None:
            raise ValueError(f"{self.mode.value} mode needs a compiled node kernel")
        if self.gate_error is not None and self.mode is not SweepMode.ONESHOT:
            raise ValueError("Gate errors only apply to oneshot mode")


def _gate_stream(k: int) -> Stream:
    return Stream(Stream.GATE_P1 + k)


def _role_values(layout: NodeLayout, inputs: NodeInputs) -> list[float]:
    values = {"S": inputs.s, **dict(zip(layout.neighbor_roles, inputs.neighbors))}
    return [values[role] for role in layout.input_roles]


def _require(lattice: SpinLattice, mode: LatticeMode) -> None:
    if lattice.mode is not mode:
        raise ValueError(f"Update needs a {mode.value} lattice, got {lattice.mode.value}")


# -- per-site updates -----------------------------------------------------


def oneshot_update(
    lattice: SpinLattice,
    site: Site,
    circuit: Circuit,
    layout: NodeLayout,
    params: IsingParams,
    rng_stream: SiteStream,
    gate_error: Optional[GateError] = None,
) -> None:
    """Run the node circuit on one site and write back the measured spin."""
    _require(lattice, LatticeMode.DISCRETE)
    flat = lattice.flat_index(site)
    bits = [int(v > 0) for v in _role_values(layout, lattice.stream(site))]

    probabilities = layout.probabilities(params)
    if gate_error is not None and gate_error.enabled:
        probabilities = tuple(
            float(gate_error.perturb(p, rng_stream.u(flat, _gate_stream(k))))
            for k, p in enumerate(probabilities)
        )

    register = prepare_node_register(layout, bits, probabilities)
    register.apply_circuit(circuit)
    bit = register.measure_qubit(layout.spin, rng_stream.u(flat))
    lattice.write_back(site, 1.0 if bit else -1.0)


def ensemble_update(
    lattice: SpinLattice,
    site: Site,
    circuit: Circuit,
    layout: NodeLayout,
    params: IsingParams,
) -> None:
    """Stream spin expectations into the node and write back E[S'] unmeasured."""
    _require(lattice, LatticeMode.ENSEMBLE)
    q = [(v + 1.0) / 2.0 for v in _role_values(layout, lattice.stream(site))]
    register = prepare_ensemble_register(layout, q, layout.probabilities(params))
    register.apply_circuit(circuit)
    q_new = min(max(register.prob_one(layout.spin), 0.0), 1.0)
    lattice.write_back(site, 2.0 * q_new - 1.0)


def classical_update(
    lattice: SpinLattice, site: Site, params: IsingParams, rng_stream: SiteStream
) -> None:
    """Textbook Metropolis step: flip iff u < min(1, exp(-dE/T))."""
    _require(lattice, LatticeMode.DISCRETE)
    inputs = lattice.stream(site)
    spec = metropolis_flip_prob(
        int(inputs.s), [int(n) for n in inputs.neighbors], params
    )
    if rng_stream.u(lattice.flat_index(site)) < spec.flip_prob:
        lattice.write_back(site, -inputs.s)


# -- vectorized color passes ----------------------------------------------


def _input_index(layout: NodeLayout, lattice: SpinLattice) -> np.ndarray:
    arrays = {"S": lattice.values, **dict(zip(layout.neighbor_roles, lattice.neighbor_arrays()))}
    index = np.zeros(lattice.shape, dtype=np.int64)
    for role in layout.input_roles:
        index = (index << 1) | (arrays[role] > 0)
    return index


def _oneshot_color(
    lattice: SpinLattice, mask: np.ndarray, context: SweepContext, rng_stream: SiteStream
) -> None:
    kernel = context.kernel
    index = _input_index(kernel.layout, lattice)[mask]
    gate_error = context.gate_error

    if gate_error is not None and gate_error.enabled:
        probabilities = [
            gate_error.perturb(p, rng_stream.draws(_gate_stream(k)).reshape(lattice.shape)[mask])
            for k, p in enumerate(kernel.layout.probabilities(context.params))
        ]
        p_one = kernel.prob_one_for(index, probabilities)
    else:
        p_one = kernel.prob_one_table(context.params)[index]

    u = rng_stream.draws().reshape(lattice.shape)[mask]
    lattice.values[mask] = np.where(u < p_one, 1.0, -1.0)


def _ensemble_color(lattice: SpinLattice, mask: np.ndarray, context: SweepContext) -> None:
    layout = context.kernel.layout
    q = {
        "S": (lattice.values[mask] + 1.0) / 2.0,
        **{
            role: (values[mask] + 1.0) / 2.0
            for role, values in zip(layout.neighbor_roles, lattice.neighbor_arrays())
        },
    }
    q_new = context.kernel.ensemble_prob_one([q[r] for r in layout.input_roles], context.params)
    lattice.values[mask] = 2.0 * np.clip(q_new, 0.0, 1.0) - 1.0


def acceptance_levels(params: IsingParams, coordination: int) -> np.ndarray:
    """Flip probability for dE = -2z, -2z+4, ..., +2z."""
    return np.array(
        [params.acceptance(de) for de in range(-2 * coordination, 2 * coordination + 1, 4)]
    )


def _classical_color(
    lattice: SpinLattice, mask: np.ndarray, context: SweepContext, rng_stream: SiteStream
) -> None:
    neighbors = lattice.neighbor_arrays()
    coordination = len(neighbors)
    s = lattice.values[mask]
    delta_e = (2.0 * s * sum(neighbors)[mask]).astype(np.int64)
    p_flip = acceptance_levels(context.params, coordination)[
        (delta_e + 2 * coordination) // 4
    ]
    u = rng_stream.draws().reshape(lattice.shape)[mask]
    lattice.values[mask] = np.where(u < p_flip, -s, s)


# -- sweep ----------------------------------------------------------------


def update_site(
    lattice: SpinLattice, site: Site, context: SweepContext, rng_stream: SiteStream
) -> None:
    if context.mode is SweepMode.CLASSICAL:
        classical_update(lattice, site, context.params, rng_stream)
    elif context.mode is SweepMode.ENSEMBLE:
        kernel = context.kernel
        ensemble_update(lattice, site, kernel.circuit, kernel.layout, context.params)
    else:
        kernel = context.kernel
        oneshot_update(
            lattice,
            site,
            kernel.circuit,
            kernel.layout,
            context.params,
            rng_stream,
            context.gate_error,
        )


def full_sweep(
    lattice: SpinLattice,
    context: SweepContext,
    rng_stream: SiteStream,
    per_site: bool = False,
    shuffle: Optional[np.random.Generator] = None,
) -> float:
    """Update the black sites, then the white sites.

    Args:
        lattice: Lattice updated in place
        context: Mode, parameters and compiled kernel
        rng_stream: Per-site draws for this sweep
        per_site: Build one register per site instead of the vectorized pass
        shuffle: Permute the per-site visiting order within each color

    Returns:
        Largest absolute change of any site value
    """
    _require(lattice, context.mode.lattice_mode)
    before = lattice.values.copy()

    for color in (Color.BLACK, Color.WHITE):
        if per_site or shuffle is not None:
            sites = lattice.checkerboard_sites(color)
            if shuffle is not None:
                sites = [sites[i] for i in shuffle.permutation(len(sites))]
            for site in sites:
                update_site(lattice, site, context, rng_stream)
            continue

        mask = lattice.checkerboard_mask(color)
        if context.mode is SweepMode.CLASSICAL:
            _classical_color(lattice, mask, context, rng_stream)
        elif context.mode is SweepMode.ENSEMBLE:
            _ensemble_color(lattice, mask, context)
        else:
            _oneshot_color(lattice, mask, context, rng_stream)

    return float(np.max(np.abs(lattice.values - before)))
