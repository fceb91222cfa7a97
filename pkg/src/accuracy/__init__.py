from .budget import (
    AMPLITUDE_EXPONENTS,
    ErrorBudget,
    ErrorMode,
    GateError,
    accuracy_curve,
    accuracy_table,
    amplitude,
    amplitude_slope,
    effective_temperature,
    inject_rotation_error,
    predicted_temperature_shift,
    required_accuracy,
    systematic_rotation_error,
)

__all__ = [
    "AMPLITUDE_EXPONENTS",
    "ErrorBudget",
    "ErrorMode",
    "GateError",
    "accuracy_curve",
    "accuracy_table",
    "amplitude",
    "amplitude_slope",
    "effective_temperature",
    "inject_rotation_error",
    "predicted_temperature_shift",
    "required_accuracy",
    "systematic_rotation_error",
]
