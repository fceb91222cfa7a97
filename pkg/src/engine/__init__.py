"""Simulation engine: node updates, sweeps and analysis."""

from .analysis import (
    ONSAGER_TC,
    critical_temperature_estimate,
    mean_field_magnetization,
    onsager_magnetization,
    reference_curves,
)
from .rng import CounterRNG, SiteStream, Stream
from .sweep import (
    RECORD_COLUMNS,
    InitialState,
    Simulation,
    SweepConfig,
    SweepRecord,
    final_lattice,
    records_to_frame,
    run_temperature_sweep,
    temperature_grid,
    thread_limit,
)
from .updates import (
    SweepContext,
    SweepMode,
    acceptance_levels,
    classical_update,
    ensemble_update,
    full_sweep,
    oneshot_update,
)

__all__ = [
    "ONSAGER_TC",
    "RECORD_COLUMNS",
    "CounterRNG",
    "InitialState",
    "Simulation",
    "SiteStream",
    "Stream",
    "SweepConfig",
    "SweepContext",
    "SweepMode",
    "SweepRecord",
    "acceptance_levels",
    "classical_update",
    "critical_temperature_estimate",
    "ensemble_update",
    "final_lattice",
    "full_sweep",
    "mean_field_magnetization",
    "oneshot_update",
    "onsager_magnetization",
    "records_to_frame",
    "reference_curves",
    "run_temperature_sweep",
    "temperature_grid",
    "thread_limit",
]
