"""Critical-temperature extraction and reference magnetization curves."""

import math
from typing import Sequence, Union

import numpy as np
import pandas as pd

from .sweep import SweepRecord

ArrayLike = Union[float, np.ndarray]

# Exact 2D square-lattice critical temperature, 2 / asinh(1)
ONSAGER_TC = 2.0 / math.asinh(1.0)

DEFAULT_THRESHOLD = 0.01


def critical_temperature_estimate(
    records: Sequence[SweepRecord], threshold: float = DEFAULT_THRESHOLD
) -> float:
    """First temperature where mean |M| falls below ``threshold``.

    The crossing is linearly interpolated between the bracketing records.
    Records must come from a heating sweep, sorted by ascending temperature.
    """
    if not records:
        raise ValueError("No records to estimate a critical temperature from")
    temps = [r.temperature for r in records]
    if any(b <= a for a, b in zip(temps, temps[1:])):
        raise ValueError("Records must be sorted by strictly ascending temperature")

    mags = [r.mean_abs_magnetization for r in records]
    for k, (t, m) in enumerate(zip(temps, mags)):
        if m >= threshold:
            continue
        if k == 0:
            return t
        t0, m0 = temps[k - 1], mags[k - 1]
        return t0 + (m0 - threshold) * (t - t0) / (m0 - m)
    raise ValueError(f"Magnetization never drops below {threshold}")


def onsager_magnetization(temperature: ArrayLike) -> ArrayLike:
    """Spontaneous magnetization of the infinite 2D lattice (J = k = 1)."""
    t = np.asarray(temperature, dtype=float)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        ordered = np.clip(1.0 - np.sinh(2.0 / t) ** -4, 0.0, None) ** 0.125
    m = np.where(t < ONSAGER_TC, ordered, 0.0)
    return float(m) if m.ndim == 0 else m


def mean_field_magnetization(
    temperature: ArrayLike,
    coordination: int = 4,
    tol: float = 1e-12,
    max_iters: int = 100000,
) -> ArrayLike:
    """Positive root of m = tanh(z m / T), by fixed-point iteration from m = 1."""
    t = np.asarray(temperature, dtype=float)
    if np.any(~(t > 0)):
        raise ValueError(f"Temperatures must be positive, got {temperature}")
    m = np.ones_like(t)
    for _ in range(max_iters):
        updated = np.tanh(coordination * m / t)
        if np.max(np.abs(updated - m)) < tol:
            m = updated
            break
        m = updated
    m = np.where(t < coordination, m, 0.0)
    return float(m) if m.ndim == 0 else m


def reference_curves(temperatures: np.ndarray) -> pd.DataFrame:
    """Onsager and mean-field curves, columns temperature, onsager, mean_field."""
    temperatures = np.asarray(temperatures, dtype=float)
    return pd.DataFrame(
        {
            "temperature": temperatures,
            "onsager": np.atleast_1d(onsager_magnetization(temperatures)),
            "mean_field": np.atleast_1d(mean_field_magnetization(temperatures)),
        }
    )
