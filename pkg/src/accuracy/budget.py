"""Gate-accuracy budget for the |P> rotations and rotation-error injection.

The probability qubits are prepared with single-qubit rotations whose
amplitude follows p(T) = exp(-a/T). A target temperature resolution dT
bounds the tolerable amplitude error: dp = |dp/dT| * dT.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

import numpy as np
import pandas as pd

ArrayLike = Union[float, np.ndarray]

# Amplitude exponents shipped for the accuracy curves, keyed by lattice dimension
AMPLITUDE_EXPONENTS = {1: 1.0, 2: 2.0}


def _positive_temperatures(temperature: ArrayLike) -> np.ndarray:
    t = np.asarray(temperature, dtype=float)
    if np.any(~(t > 0)):
        raise ValueError(f"Temperatures must be positive, got {temperature}")
    return t


def _unwrap(value: np.ndarray) -> ArrayLike:
    return float(value) if value.ndim == 0 else value


def amplitude(temperature: ArrayLike, a: float) -> ArrayLike:
    """p(T) = exp(-a/T)."""
    t = _positive_temperatures(temperature)
    return _unwrap(np.exp(-a / t))


def amplitude_slope(temperature: ArrayLike, a: float) -> ArrayLike:
    """|dp/dT| = (a/T^2) exp(-a/T)."""
    t = _positive_temperatures(temperature)
    return _unwrap(a / t**2 * np.exp(-a / t))


def required_accuracy(temperature: ArrayLike, a: float, delta_t: float) -> ArrayLike:
    """Largest amplitude error that keeps the temperature within ``delta_t``."""
    if a <= 0:
        raise ValueError(f"Amplitude exponent must be positive, got {a}")
    if delta_t <= 0:
        raise ValueError(f"delta_t must be positive, got {delta_t}")
    return _unwrap(np.asarray(amplitude_slope(temperature, a)) * delta_t)


@dataclass(frozen=True)
class ErrorBudget:
    """Allowed rotation error for one lattice dimension at one temperature."""

    dim: int
    temperature: float
    delta_t: float = 0.1
    a: Optional[float] = None

    def __post_init__(self):
        if self.dim not in AMPLITUDE_EXPONENTS:
            raise ValueError(f"dim must be 1 or 2, got {self.dim}")
        if self.a is None:
            object.__setattr__(self, "a", AMPLITUDE_EXPONENTS[self.dim])

    @property
    def delta_p(self) -> float:
        return required_accuracy(self.temperature, self.a, self.delta_t)

    def tolerates(self, delta_p: float) -> bool:
        return delta_p <= self.delta_p


def accuracy_curve(a: float, delta_t: float, temperatures: np.ndarray) -> pd.DataFrame:
    temperatures = np.asarray(temperatures, dtype=float)
    return pd.DataFrame(
        {
            "T": temperatures,
            "delta_p": np.atleast_1d(required_accuracy(temperatures, a, delta_t)),
        }
    )


def accuracy_table(delta_t: float, temperatures: np.ndarray) -> pd.DataFrame:
    """1D and 2D curves side by side, columns T, delta_p_1d, delta_p_2d."""
    temperatures = np.asarray(temperatures, dtype=float)
    table = pd.DataFrame({"T": temperatures})
    for dim, a in AMPLITUDE_EXPONENTS.items():
        table[f"delta_p_{dim}d"] = np.atleast_1d(
            required_accuracy(temperatures, a, delta_t)
        )
    return table


# -- error injection ------------------------------------------------------


class ErrorMode(str, Enum):
    UNIFORM = "uniform"
    SYSTEMATIC = "systematic"


def inject_rotation_error(prob: ArrayLike, delta_p: float, draw: ArrayLike) -> ArrayLike:
    """Perturb the amplitude sqrt(P) by ``delta_p * draw`` and return the new P.

    ``draw`` lies in [-1, 1]. The perturbed amplitude is clamped to [0, 1].
    """
    if delta_p < 0:
        raise ValueError(f"delta_p must be non-negative, got {delta_p}")
    if delta_p == 0:
        return prob
    p = np.sqrt(np.asarray(prob, dtype=float)) + delta_p * np.asarray(draw, dtype=float)
    return _unwrap(np.clip(p, 0.0, 1.0) ** 2)


def systematic_rotation_error(prob: ArrayLike, delta_p: float) -> ArrayLike:
    """Fixed over-rotation by ``delta_p`` on every preparation."""
    return inject_rotation_error(prob, delta_p, 1.0)


def effective_temperature(prob: ArrayLike, delta_e: float) -> ArrayLike:
    """Temperature at which exp(-dE/T) equals ``prob``."""
    p = np.asarray(prob, dtype=float)
    if np.any((p <= 0) | (p >= 1)):
        raise ValueError(f"Probability must lie strictly inside (0, 1), got {prob}")
    return _unwrap(-delta_e / np.log(p))


def predicted_temperature_shift(temperature: float, a: float, delta_p: float) -> float:
    """First-order temperature error from an amplitude error ``delta_p``."""
    return delta_p / amplitude_slope(temperature, a)


@dataclass(frozen=True)
class GateError:
    """Rotation error applied to the |P> preparations of one-shot updates."""

    delta_p: float
    mode: ErrorMode = ErrorMode.UNIFORM

    def __post_init__(self):
        if self.delta_p < 0:
            raise ValueError(f"delta_p must be non-negative, got {self.delta_p}")
        object.__setattr__(self, "mode", ErrorMode(self.mode))

    @property
    def enabled(self) -> bool:
        return self.delta_p > 0

    def perturb(self, prob: ArrayLike, uniforms: ArrayLike) -> ArrayLike:
        """Apply the error using uniforms in [0, 1) as the random source."""
        if self.mode is ErrorMode.SYSTEMATIC:
            return inject_rotation_error(prob, self.delta_p, np.ones_like(uniforms))
        return inject_rotation_error(
            prob, self.delta_p, 2.0 * np.asarray(uniforms, dtype=float) - 1.0
        )
