"""Temperature sweeps with equilibration control."""

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field, field_validator, model_validator
from tqdm import tqdm

from ..accuracy import ErrorMode, GateError
from ..circuits import IsingParams, NodeKernel, build_circuit
from ..lattice import SpinLattice
from .rng import MAX_SEED, CounterRNG, Stream
from .updates import SweepContext, SweepMode, full_sweep

logger = logging.getLogger(__name__)

# Default convergence tolerances per mode
ENSEMBLE_TOLERANCE = 1e-9
DISCRETE_TOLERANCE = 1e-3

RECORD_COLUMNS = [
    "temperature",
    "mode",
    "dim",
    "size",
    "iterations_used",
    "mean_abs_magnetization",
    "std_magnetization",
    "mean_energy_per_site",
    "seed",
]


class InitialState(str, Enum):
    GROUND = "ground"
    RANDOM = "random"


def temperature_grid(start: float, end: float, step: float) -> np.ndarray:
    """Inclusive grid from ``start`` toward ``end`` in steps of ``step``."""
    if step <= 0:
        raise ValueError(f"Temperature step must be positive, got {step}")
    count = int(math.floor(abs(end - start) / step + 1e-9))
    direction = 1.0 if end >= start else -1.0
    return np.round(start + direction * step * np.arange(count + 1), 10)


def thread_limit() -> int:
    """Worker cap from T2QC_THREADS; 0 or unset means one per CPU."""
    value = int(os.environ.get("T2QC_THREADS", "0") or 0)
    if value < 0:
        raise ValueError(f"T2QC_THREADS must be >= 0, got {value}")
    return value or (os.cpu_count() or 1)


class SweepConfig(BaseModel):
    """Validated settings for one temperature sweep."""

    mode: SweepMode = SweepMode.CLASSICAL
    dim: int = 2
    shape: tuple[int, ...] = (64, 64)
    t_start: float = 0.5
    t_end: float = 4.0
    t_step: float = 0.01
    temperatures: Optional[list[float]] = None
    cool: bool = False
    min_iters: int = Field(default=20, ge=1)
    max_iters: int = Field(default=10000, ge=1)
    equil_tol: Optional[float] = None
    sample_sweeps: int = Field(default=100, ge=1)
    seed: int = Field(default=0, ge=0, le=MAX_SEED)
    initial_state: InitialState = InitialState.GROUND
    gate_error: float = Field(default=0.0, ge=0.0)
    gate_error_mode: ErrorMode = ErrorMode.UNIFORM
    independent: bool = False

    @field_validator("dim")
    @classmethod
    def validate_dim(cls, v: int) -> int:
        if v not in (1, 2):
            raise ValueError(f"dim must be 1 or 2, got {v}")
        return v

    @field_validator("shape")
    @classmethod
    def validate_shape(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        if any(n < 2 or n % 2 for n in v):
            raise ValueError(f"lattice dimensions must be even, got {v}")
        return v

    @field_validator("t_start", "t_end", "t_step")
    @classmethod
    def validate_positive(cls, v: float) -> float:
        if not v > 0:
            raise ValueError(f"must be positive, got {v}")
        return v

    @field_validator("temperatures")
    @classmethod
    def validate_temperatures(cls, v: Optional[list[float]]) -> Optional[list[float]]:
        if v is not None:
            if not v:
                raise ValueError("temperature list is empty")
            if any(not t > 0 for t in v):
                raise ValueError(f"temperatures must be positive, got {v}")
        return v

    @field_validator("equil_tol")
    @classmethod
    def validate_tolerance(cls, v: Optional[float]) -> Optional[float]:
        if v is not None and not v > 0:
            raise ValueError(f"must be positive, got {v}")
        return v

    @model_validator(mode="after")
    def validate_combination(self) -> "SweepConfig":
        if self.min_iters > self.max_iters:
            raise ValueError(
                f"min_iters ({self.min_iters}) exceeds max_iters ({self.max_iters})"
            )
        if len(self.shape) != self.dim:
            raise ValueError(f"shape {self.shape} does not match dim {self.dim}")
        if self.gate_error > 0 and self.mode is not SweepMode.ONESHOT:
            raise ValueError("gate_error requires mode=oneshot")
        return self

    @property
    def tolerance(self) -> float:
        if self.equil_tol is not None:
            return self.equil_tol
        if self.mode is SweepMode.ENSEMBLE:
            return ENSEMBLE_TOLERANCE
        return DISCRETE_TOLERANCE

    @property
    def size_label(self) -> str:
        return "x".join(str(n) for n in self.shape)

    def temperature_points(self) -> np.ndarray:
        """Temperatures in visiting order: ascending, or descending when cooling."""
        if self.temperatures is not None:
            points = np.array(sorted(self.temperatures), dtype=float)
        else:
            low, high = sorted((self.t_start, self.t_end))
            points = temperature_grid(low, high, self.t_step)
        if self.cool or (self.temperatures is None and self.t_start > self.t_end):
            points = points[::-1]
        return points


@dataclass
class SweepRecord:
    temperature: float
    mode: str
    dim: int
    size: str
    iterations_used: int
    mean_abs_magnetization: float
    std_magnetization: float
    mean_energy_per_site: float
    seed: int


class Simulation:
    """One configured lattice simulation: kernel, draws and update context."""

    def __init__(self, config: SweepConfig):
        self.config = config
        self.rng = CounterRNG(config.seed)
        self.kernel: Optional[NodeKernel] = None
        if config.mode is not SweepMode.CLASSICAL:
            self.kernel = NodeKernel(*build_circuit(config.dim))
        self.gate_error: Optional[GateError] = None
        if config.gate_error > 0:
            self.gate_error = GateError(config.gate_error, config.gate_error_mode)

    def initial_lattice(self, temp_index: int = 0) -> SpinLattice:
        config = self.config
        if config.initial_state is InitialState.GROUND:
            return SpinLattice.ground(config.shape, config.mode.lattice_mode)
        if config.mode is SweepMode.ENSEMBLE:
            return SpinLattice.mixed(config.shape)
        size = int(np.prod(config.shape))
        draws = self.rng.uniforms(Stream.INIT, size, temp_index=temp_index)
        return SpinLattice.from_uniforms(draws.reshape(config.shape))

    def context(self, temperature: float) -> SweepContext:
        return SweepContext(
            mode=self.config.mode,
            params=IsingParams(temperature=float(temperature)),
            kernel=self.kernel,
            gate_error=self.gate_error,
        )

    def sweep(
        self,
        lattice: SpinLattice,
        context: SweepContext,
        temp_index: int,
        sweep_index: int,
        per_site: bool = False,
    ) -> float:
        stream = self.rng.site_stream(lattice.num_sites, sweep_index, temp_index)
        return full_sweep(lattice, context, stream, per_site=per_site)

    def run_point(
        self, lattice: SpinLattice, temperature: float, temp_index: int
    ) -> SweepRecord:
        """Equilibrate ``lattice`` at one temperature and record observables."""
        config = self.config
        context = self.context(temperature)
        tolerance = config.tolerance

        if config.mode is SweepMode.ENSEMBLE:
            iterations = 0
            for iterations in range(1, config.max_iters + 1):
                change = self.sweep(lattice, context, temp_index, iterations - 1)
                if change < tolerance:
                    break
            else:
                logger.warning(
                    f"T={temperature:.4f}: ensemble did not converge in "
                    f"{config.max_iters} sweeps"
                )
            samples = np.array([abs(lattice.magnetization())])
            energies = np.array([lattice.energy_per_site()])
        else:
            iterations = self._equilibrate(lattice, context, temp_index)
            samples = np.empty(config.sample_sweeps)
            energies = np.empty(config.sample_sweeps)
            for k in range(config.sample_sweeps):
                self.sweep(lattice, context, temp_index, iterations + k)
                samples[k] = abs(lattice.magnetization())
                energies[k] = lattice.energy_per_site()

        record = SweepRecord(
            temperature=float(temperature),
            mode=config.mode.value,
            dim=config.dim,
            size=config.size_label,
            iterations_used=iterations,
            mean_abs_magnetization=float(np.mean(samples)),
            std_magnetization=float(np.std(samples)),
            mean_energy_per_site=float(np.mean(energies)),
            seed=config.seed,
        )
        logger.debug(
            f"T={record.temperature:.4f} |M|={record.mean_abs_magnetization:.4f} "
            f"after {iterations} sweeps"
        )
        return record

    def _equilibrate(
        self, lattice: SpinLattice, context: SweepContext, temp_index: int
    ) -> int:
        """Sweep until the running mean of |M| settles; returns sweeps used.

        After at least ``min_iters`` sweeps, the mean |M| of the last
        ceil(min_iters/2) sweeps is compared with the window before it.
        """
        config = self.config
        window = math.ceil(config.min_iters / 2)
        history: list[float] = []

        for iteration in range(1, config.max_iters + 1):
            self.sweep(lattice, context, temp_index, iteration - 1)
            history.append(abs(lattice.magnetization()))
            if iteration < max(config.min_iters, 2 * window):
                continue
            recent = np.mean(history[-window:])
            previous = np.mean(history[-2 * window : -window])
            if abs(recent - previous) < config.tolerance:
                return iteration
        return config.max_iters


def run_temperature_sweep(
    config: SweepConfig, show_progress: bool = True
) -> list[SweepRecord]:
    """Run every temperature point of ``config`` and return one record each.

    Annealed sweeps carry the lattice from one point to the next.
    Independent sweeps start every point from the initial state and run
    on a thread pool capped by T2QC_THREADS.
    """
    simulation = Simulation(config)
    points = config.temperature_points()
    logger.info(
        f"{config.mode.value} sweep: dim={config.dim} size={config.size_label} "
        f"{len(points)} temperatures from {points[0]:.4f} to {points[-1]:.4f}"
    )

    if config.independent:

        def run_one(temp_index: int) -> SweepRecord:
            lattice = simulation.initial_lattice(temp_index)
            return simulation.run_point(lattice, points[temp_index], temp_index)

        with ThreadPoolExecutor(max_workers=thread_limit()) as pool:
            results = pool.map(run_one, range(len(points)))
            return list(
                tqdm(results, total=len(points), desc="Temperatures", disable=not show_progress)
            )

    lattice = simulation.initial_lattice()
    records = []
    for temp_index, temperature in enumerate(
        tqdm(points, desc="Temperatures", disable=not show_progress)
    ):
        records.append(simulation.run_point(lattice, temperature, temp_index))
    return records


def records_to_frame(records: list[SweepRecord]) -> pd.DataFrame:
    return pd.DataFrame([asdict(r) for r in records], columns=RECORD_COLUMNS)


def final_lattice(
    config: SweepConfig, temperature: float, sweeps: int
) -> SpinLattice:
    """Lattice after ``sweeps`` sweeps at one temperature from the initial state."""
    if sweeps < 0:
        raise ValueError(f"sweeps must be non-negative, got {sweeps}")
    simulation = Simulation(config)
    lattice = simulation.initial_lattice()
    context = simulation.context(temperature)
    for k in range(sweeps):
        simulation.sweep(lattice, context, 0, k)
    return lattice


