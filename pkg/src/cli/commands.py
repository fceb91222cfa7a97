"""Command-line interface for the type-II quantum computer simulator."""

import logging
import re
import sys
from pathlib import Path
from typing import Any, Optional

import click
import numpy as np
import pandas as pd
import yaml
from pydantic import ValidationError
from rich.panel import Panel

from ..accuracy import accuracy_table, required_accuracy
from ..circuits import IsingParams, build_circuit, truth_table, verify_circuit
from ..engine import (
    SweepConfig,
    critical_temperature_estimate,
    final_lattice,
    records_to_frame,
    reference_curves,
    run_temperature_sweep,
    temperature_grid,
)
from .output import (
    console,
    setup_logging,
    sweep_table,
    truth_table_view,
    verification_table,
    write_csv,
    write_text,
)

logger = logging.getLogger(__name__)

DEFAULT_CONFIG = Path("config/config.yaml")

# SweepConfig field -> CLI flag, for validation messages
FLAG_NAMES = {
    "mode": "--mode",
    "dim": "--dim",
    "shape": "--size",
    "t_start": "--t-start",
    "t_end": "--t-end",
    "t_step": "--t-step",
    "temperatures": "--temps",
    "min_iters": "--min-iters",
    "max_iters": "--max-iters",
    "equil_tol": "--equil-tol",
    "sample_sweeps": "--samples",
    "seed": "--seed",
    "initial_state": "--init",
    "gate_error_mode": "--gate-error-mode",
    "gate_error": "--gate-error",
    "cool": "--cool",
    "independent": "--independent",
}


# -- flag parsing ---------------------------------------------------------


def parse_size(value: Any, flag: str = "--size") -> tuple[int, ...]:
    """'64x64' -> (64, 64); '128' -> (128,)."""
    if isinstance(value, (list, tuple)):
        return tuple(int(n) for n in value)
    text = str(value).strip().lower()
    if not re.fullmatch(r"\d+(x\d+)?", text):
        raise click.BadParameter(f"expected N or NxM, got {value!r}", param_hint=flag)
    return tuple(int(n) for n in text.split("x"))


def parse_float_list(value: str, flag: str) -> list[float]:
    try:
        values = [float(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise click.BadParameter(
            f"expected comma-separated numbers, got {value!r}", param_hint=flag
        )
    if not values:
        raise click.BadParameter("no values given", param_hint=flag)
    return values


def parse_range(value: str, flag: str = "--t-range") -> np.ndarray:
    """'start:end:step' -> inclusive grid of positive temperatures."""
    parts = value.split(":")
    try:
        start, end, step = (float(p) for p in parts)
    except ValueError:
        raise click.BadParameter(f"expected start:end:step, got {value!r}", param_hint=flag)
    if start <= 0 or end <= 0:
        raise click.BadParameter(f"temperatures must be positive, got {value!r}", param_hint=flag)
    if step <= 0:
        raise click.BadParameter(f"step must be positive, got {step}", param_hint=flag)
    return temperature_grid(start, end, step)


def load_config(path: Optional[Path]) -> dict:
    """Sweep defaults from YAML; a missing default file yields no overrides."""
    if path is None:
        path = DEFAULT_CONFIG
        if not path.exists():
            return {}
    elif not path.exists():
        raise click.BadParameter(f"{path} does not exist", param_hint="--config")

    with open(path) as f:
        cfg = yaml.safe_load(f) or {}
    logger.debug(f"Loaded config from {path}")
    return cfg.get("sweep", {}) or {}


def _flags_for(error: dict) -> str:
    if error["loc"]:
        return FLAG_NAMES.get(str(error["loc"][0]), str(error["loc"][0]))
    mentioned = [
        flag
        for field, flag in FLAG_NAMES.items()
        if re.search(rf"\b{field}\b", error["msg"])
    ]
    return " / ".join(dict.fromkeys(mentioned)) or "options"


def build_sweep_config(overrides: dict, file_values: dict) -> SweepConfig:
    """Merge built-in defaults, YAML values and explicit flags, in that order."""
    values = dict(file_values)
    values.update({k: v for k, v in overrides.items() if v is not None})
    if "size" in values:
        values["shape"] = parse_size(values.pop("size"))
    try:
        return SweepConfig(**values)
    except ValidationError as e:
        error = e.errors()[0]
        message = str(error["msg"]).removeprefix("Value error, ")
        raise click.BadParameter(message, param_hint=_flags_for(error))


# -- commands -------------------------------------------------------------


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Enable debug logging")
def cli(verbose: bool):
    """Simulate a type-II quantum computer running Metropolis Ising updates."""
    setup_logging(verbose)


@cli.command()
@click.option(
    "--config",
    "-c",
    "config_path",
    type=click.Path(path_type=Path),
    default=None,
    help="YAML file with sweep defaults (default: config/config.yaml if present)",
)
@click.option(
    "--mode",
    type=click.Choice(["oneshot", "ensemble", "classical"]),
    default=None,
    help="Update mode",
)
@click.option("--dim", type=click.Choice(["1", "2"]), default=None, help="Lattice dimension")
@click.option("--size", default=None, help="Lattice size, N (1D) or NxM (2D)")
@click.option("--t-start", type=float, default=None, help="First temperature")
@click.option("--t-end", type=float, default=None, help="Last temperature")
@click.option("--t-step", type=float, default=None, help="Temperature step")
@click.option("--temps", default=None, help="Explicit comma-separated temperatures")
@click.option("--min-iters", type=int, default=None, help="Minimum equilibration sweeps")
@click.option("--max-iters", type=int, default=None, help="Maximum equilibration sweeps")
@click.option("--equil-tol", type=float, default=None, help="Equilibration tolerance")
@click.option("--samples", type=int, default=None, help="Sample sweeps per temperature")
@click.option("--seed", type=int, default=None, help="Random seed")
@click.option(
    "--init", type=click.Choice(["ground", "random"]), default=None, help="Initial state"
)
@click.option("--cool/--heat", default=None, help="Sweep direction")
@click.option(
    "--gate-error", type=float, default=None, help="Rotation amplitude error (oneshot)"
)
@click.option(
    "--gate-error-mode",
    type=click.Choice(["uniform", "systematic"]),
    default=None,
    help="Random or fixed rotation error",
)
@click.option(
    "--independent/--annealed",
    default=None,
    help="Restart every temperature from the initial state",
)
@click.option(
    "--threshold", type=float, default=0.01, help="|M| threshold for the T_c estimate"
)
@click.option(
    "--out",
    "-o",
    type=click.Path(path_type=Path),
    default=Path("results/sweep.csv"),
    help="Output CSV",
)
@click.option("--no-progress", is_flag=True, help="Hide the progress bar")
def sweep(
    config_path: Optional[Path],
    mode: Optional[str],
    dim: Optional[str],
    size: Optional[str],
    t_start: Optional[float],
    t_end: Optional[float],
    t_step: Optional[float],
    temps: Optional[str],
    min_iters: Optional[int],
    max_iters: Optional[int],
    equil_tol: Optional[float],
    samples: Optional[int],
    seed: Optional[int],
    init: Optional[str],
    cool: Optional[bool],
    gate_error: Optional[float],
    gate_error_mode: Optional[str],
    independent: Optional[bool],
    threshold: float,
    out: Path,
    no_progress: bool,
):
    """Run a temperature sweep and write one CSV row per temperature."""
    config = build_sweep_config(
        {
            "mode": mode,
            "dim": int(dim) if dim else None,
            "size": parse_size(size) if size else None,
            "t_start": t_start,
            "t_end": t_end,
            "t_step": t_step,
            "temperatures": parse_float_list(temps, "--temps") if temps else None,
            "min_iters": min_iters,
            "max_iters": max_iters,
            "equil_tol": equil_tol,
            "sample_sweeps": samples,
            "seed": seed,
            "initial_state": init,
            "cool": cool,
            "gate_error": gate_error,
            "gate_error_mode": gate_error_mode,
            "independent": independent,
        },
        load_config(config_path),
    )

    points = config.temperature_points()
    console.print(
        Panel.fit(
            f"[bold blue]{config.mode.value} sweep[/bold blue]\n"
            f"{config.dim}D lattice {config.size_label}, {len(points)} temperatures "
            f"{points[0]:g} → {points[-1]:g}, seed {config.seed}",
            border_style="blue",
        )
    )

    records = run_temperature_sweep(config, show_progress=not no_progress)
    write_csv(records_to_frame(records), out)

    console.print(sweep_table(records))
    if not config.cool and len(records) > 1 and points[0] < points[-1]:
        try:
            tc = critical_temperature_estimate(records, threshold)
            console.print(f"[bold]Estimated T_c:[/bold] {tc:.4f} (|M| < {threshold})")
        except ValueError:
            console.print(f"[yellow]|M| never dropped below {threshold}[/yellow]")
    console.print(f"[green]✓[/green] Wrote {len(records)} rows to {out}")


@cli.command()
@click.option("--dim", type=click.Choice(["1", "2"]), default="2", help="Lattice dimension")
@click.option("--temps", default="2.0", help="Comma-separated temperatures")
@click.option("--tolerance", type=float, default=1e-10, help="Per-row probability tolerance")
@click.option(
    "--out",
    "-o",
    type=click.Path(path_type=Path),
    default=Path("results/verify.csv"),
    help="Report CSV",
)
@click.option("--drop-gate", type=int, default=None, hidden=True)
def verify(
    dim: str,
    temps: str,
    tolerance: float,
    out: Path,
    drop_gate: Optional[int],
):
    """Check the node circuit against the Metropolis rule for every input."""
    temperatures = parse_float_list(temps, "--temps")
    if any(t <= 0 for t in temperatures):
        raise click.BadParameter("temperatures must be positive", param_hint="--temps")

    circuit, layout = build_circuit(int(dim))
    if drop_gate is not None:
        if not 0 <= drop_gate < len(circuit):
            raise click.BadParameter(
                f"circuit has {len(circuit)} gates", param_hint="--drop-gate"
            )
        circuit = circuit.without(drop_gate)

    reports = [
        verify_circuit(circuit, layout, IsingParams(temperature=t), tolerance)
        for t in temperatures
    ]
    write_csv(pd.concat([r.to_frame() for r in reports], ignore_index=True), out)

    total = sum(len(r.rows) for r in reports)
    failed = [r for r in reports if not r.passed]
    for report in failed:
        console.print(verification_table(report, failures_only=True))

    console.print(
        f"{dim}D circuit, {len(circuit)} gates ({circuit.multi_qubit_gate_count} multi-qubit), "
        f"{total} rows over {len(reports)} temperatures"
    )
    if failed:
        console.print(f"[red]✗ {sum(len(r.failures) for r in failed)} rows failed[/red]")
        sys.exit(1)
    console.print("[green]✓ All rows pass[/green]")


@cli.command()
@click.option("--dim", type=click.Choice(["1", "2"]), default="1", help="Lattice dimension")
@click.option("--temp", type=float, default=2.0, help="Temperature")
@click.option("--plain", is_flag=True, help="One line per input instead of a table")
def truthtable(dim: str, temp: float, plain: bool):
    """Print the circuit output for every classical input."""
    if temp <= 0:
        raise click.BadParameter(f"must be positive, got {temp}", param_hint="--temp")

    circuit, layout = build_circuit(int(dim))
    rows = truth_table(circuit, layout, IsingParams(temperature=temp))
    if plain:
        for row in rows:
            click.echo(row.summary())
        return

    order = ", ".join(layout.input_roles)
    console.print(
        truth_table_view(rows, title=f"{dim}D node circuit, inputs {order}, T={temp:g}")
    )
    console.print(
        f"{layout.num_qubits} qubits, {len(circuit)} gates "
        f"({circuit.multi_qubit_gate_count} multi-qubit)"
    )


@cli.command()
@click.option("--delta-t", type=float, default=0.1, help="Target temperature resolution")
@click.option("--t-range", default="0.5:4:0.1", help="Temperatures as start:end:step")
@click.option(
    "--out",
    "-o",
    type=click.Path(path_type=Path),
    default=Path("results/accuracy.csv"),
    help="Output CSV",
)
def accuracy(delta_t: float, t_range: str, out: Path):
    """Write the maximum allowable rotation error for the 1D and 2D circuits."""
    if delta_t <= 0:
        raise click.BadParameter(f"must be positive, got {delta_t}", param_hint="--delta-t")
    temperatures = parse_range(t_range)
    table = accuracy_table(delta_t, temperatures)
    write_csv(table, out)

    peak = float(temperatures[np.argmax(table["delta_p_2d"])])
    console.print(
        f"2D: largest allowable error {table['delta_p_2d'].max():.4g} at T={peak:g}; "
        f"δp at T=2 is {required_accuracy(2.0, 2.0, delta_t):.6f}"
    )
    console.print(f"[green]✓[/green] Wrote {len(table)} rows to {out}")


@cli.command()
@click.option(
    "--mode",
    type=click.Choice(["oneshot", "ensemble", "classical"]),
    default="oneshot",
    help="Update mode",
)
@click.option("--dim", type=click.Choice(["1", "2"]), default="2", help="Lattice dimension")
@click.option("--size", default="32x32", help="Lattice size, N (1D) or NxM (2D)")
@click.option("--temp", type=float, default=2.0, help="Temperature")
@click.option("--sweeps", type=int, default=100, help="Number of sweeps")
@click.option("--seed", type=int, default=0, help="Random seed")
@click.option(
    "--init", type=click.Choice(["ground", "random"]), default="random", help="Initial state"
)
@click.option(
    "--out",
    "-o",
    type=click.Path(path_type=Path),
    default=Path("results/snapshot.txt"),
    help="Output text file",
)
def snapshot(
    mode: str, dim: str, size: str, temp: float, sweeps: int, seed: int, init: str, out: Path
):
    """Run sweeps at one temperature and write the lattice as text."""
    if temp <= 0:
        raise click.BadParameter(f"must be positive, got {temp}", param_hint="--temp")
    if sweeps < 0:
        raise click.BadParameter(f"must be non-negative, got {sweeps}", param_hint="--sweeps")
    config = build_sweep_config(
        {
            "mode": mode,
            "dim": int(dim),
            "size": parse_size(size),
            "temperatures": [temp],
            "seed": seed,
            "initial_state": init,
        },
        {},
    )
    lattice = final_lattice(config, temp, sweeps)
    write_text(lattice.snapshot(), out)
    console.print(
        f"{lattice.size_label} {mode} lattice after {sweeps} sweeps at T={temp:g}: "
        f"M={lattice.magnetization():+.4f} ({lattice.hardware_nodes} hardware nodes)"
    )
    console.print(f"[green]✓[/green] Wrote {out}")


@cli.command()
@click.option("--t-range", default="0.5:4:0.01", help="Temperatures as start:end:step")
@click.option(
    "--out",
    "-o",
    type=click.Path(path_type=Path),
    default=Path("results/reference.csv"),
    help="Output CSV",
)
def reference(t_range: str, out: Path):
    """Write the exact and mean-field magnetization curves for comparison."""
    table = reference_curves(parse_range(t_range))
    write_csv(table, out)
    console.print(f"[green]✓[/green] Wrote {len(table)} rows to {out}")


def main():
    cli()
