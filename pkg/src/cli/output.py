"""CSV and text writers plus the rich tables printed by the CLI."""

import logging
from pathlib import Path
from typing import Optional

import click
import pandas as pd
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from ..circuits import TruthTableRow, VerificationReport
from ..engine import SweepRecord

FLOAT_FORMAT = "%.10g"

console = Console()


class OutputError(click.ClickException):
    """Failure writing an output file."""

    exit_code = 3


def setup_logging(verbose: bool = False) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def write_csv(frame: pd.DataFrame, path: Path) -> None:
    """Write ``frame`` with a fixed float format so reruns are byte-identical."""
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    except OSError as e:
        raise OutputError(f"Could not write {path}: {e}") from e


def write_text(text: str, path: Path) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as e:
        raise OutputError(f"Could not write {path}: {e}") from e


def sweep_table(records: list[SweepRecord], limit: int = 20) -> Table:
    """Summary of a sweep, thinned to at most ``limit`` rows."""
    table = Table(title="Temperature Sweep")
    table.add_column("T", style="cyan", justify="right")
    table.add_column("|M|", style="green", justify="right")
    table.add_column("std", justify="right")
    table.add_column("E/site", justify="right")
    table.add_column("Sweeps", style="dim", justify="right")

    stride = max(1, -(-len(records) // limit))
    for record in records[::stride]:
        table.add_row(
            f"{record.temperature:.3f}",
            f"{record.mean_abs_magnetization:.4f}",
            f"{record.std_magnetization:.4f}",
            f"{record.mean_energy_per_site:.4f}",
            str(record.iterations_used),
        )
    return table


def verification_table(report: VerificationReport, failures_only: bool = False) -> Table:
    table = Table(title=f"{report.dim}D circuit at T={report.temperature:g}")
    table.add_column("Input", style="cyan")
    table.add_column("dE", justify="right")
    table.add_column("Expected P(S'=1)", justify="right")
    table.add_column("Observed", justify="right")
    table.add_column("Error", justify="right")
    table.add_column("Status")

    rows = report.failures if failures_only else report.rows
    for row in rows:
        table.add_row(
            row.input_bits,
            f"{row.delta_e:+d}",
            f"{row.expected_prob:.10f}",
            f"{row.observed_prob:.10f}",
            f"{row.abs_error:.2e}",
            "[green]pass[/green]" if row.passed else "[red]FAIL[/red]",
        )
    return table


def truth_table_view(
    rows: list[TruthTableRow], title: Optional[str] = None
) -> Table:
    """Input spins, output state, classical outcome and its probability."""
    table = Table(title=title)
    table.add_column("Inputs", style="cyan")
    table.add_column("|S'>")
    table.add_column("S' classical", justify="center")
    table.add_column("p", justify="right")

    for row in rows:
        spins = "\n".join(spin for spin, _ in row.outcomes)
        if row.deterministic:
            probs = "1"
        else:
            probs = "\n".join(f"{p:.4f}" for _, p in row.outcomes)
        table.add_row(row.inputs, row.output_state, spins, probs)
    return table
