"""Tests for the gate-accuracy budget and rotation-error injection."""

import math

import numpy as np
import pytest

from src.accuracy import (
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
from src.engine import temperature_grid


class TestRequiredAccuracy:
    @pytest.mark.parametrize(
        "temperature, a, expected",
        [(2.0, 2.0, 0.018394), (1.0, 2.0, 0.027067), (4.0, 1.0, 0.004868)],
    )
    def test_spot_values(self, temperature, a, expected):
        assert required_accuracy(temperature, a, 0.1) == pytest.approx(expected, abs=1e-6)

    def test_scales_with_delta_t(self):
        assert required_accuracy(2.0, 2.0, 0.2) == pytest.approx(
            2 * required_accuracy(2.0, 2.0, 0.1)
        )

    def test_vectorized(self):
        values = required_accuracy(np.array([1.0, 2.0]), 2.0, 0.1)
        assert values.shape == (2,)

    def test_peak_location(self):
        # |dp/dT| peaks at T = a/2
        temps = np.linspace(0.2, 4.0, 3801)
        peak = temps[np.argmax(amplitude_slope(temps, 2.0))]
        assert peak == pytest.approx(1.0, abs=1e-3)

    def test_amplitude(self):
        assert amplitude(2.0, 2.0) == pytest.approx(math.exp(-1))

    @pytest.mark.parametrize(
        "temperature, a, delta_t", [(0.0, 2.0, 0.1), (1.0, 0.0, 0.1), (1.0, 2.0, 0.0)]
    )
    def test_rejects(self, temperature, a, delta_t):
        with pytest.raises(ValueError):
            required_accuracy(temperature, a, delta_t)


class TestErrorBudget:
    def test_default_exponents(self):
        assert ErrorBudget(dim=1, temperature=1.0).a == 1.0
        assert ErrorBudget(dim=2, temperature=1.0).a == 2.0

    def test_delta_p(self):
        assert ErrorBudget(dim=2, temperature=2.0).delta_p == pytest.approx(0.018394, abs=1e-6)

    def test_tolerates(self):
        budget = ErrorBudget(dim=2, temperature=2.5)
        assert budget.tolerates(0.01)
        assert not budget.tolerates(0.05)

    def test_bad_dim(self):
        with pytest.raises(ValueError):
            ErrorBudget(dim=3, temperature=1.0)


class TestAccuracyTables:
    def test_curve(self):
        frame = accuracy_curve(2.0, 0.1, np.array([1.0, 2.0]))
        assert list(frame.columns) == ["T", "delta_p"]
        assert frame["delta_p"].iloc[1] == pytest.approx(0.018394, abs=1e-6)

    def test_table(self):
        frame = accuracy_table(0.1, temperature_grid(0.5, 4.0, 0.1))
        assert list(frame.columns) == ["T", "delta_p_1d", "delta_p_2d"]
        assert len(frame) == 36
        assert (frame["delta_p_1d"] > 0).all()
        assert (frame["delta_p_2d"] > 0).all()


class TestInjection:
    def test_zero_error_is_identity(self):
        assert inject_rotation_error(0.3, 0.0, 0.7) == 0.3

    def test_systematic(self):
        assert systematic_rotation_error(0.25, 0.1) == pytest.approx(0.36)

    def test_clamped(self):
        assert systematic_rotation_error(0.9, 0.5) == 1.0
        assert inject_rotation_error(0.01, 0.5, -1.0) == 0.0

    def test_negative_delta(self):
        with pytest.raises(ValueError):
            inject_rotation_error(0.5, -0.1, 0.0)

    def test_uniform_gate_error_is_unbiased_in_amplitude(self):
        error = GateError(0.05)
        uniforms = (np.arange(10_000) + 0.5) / 10_000
        perturbed = error.perturb(0.2, uniforms)
        assert np.mean(np.sqrt(perturbed)) == pytest.approx(math.sqrt(0.2), abs=1e-6)

    def test_systematic_gate_error_ignores_draws(self):
        error = GateError(0.05, ErrorMode.SYSTEMATIC)
        perturbed = error.perturb(0.2, np.array([0.1, 0.9]))
        np.testing.assert_allclose(perturbed, systematic_rotation_error(0.2, 0.05))

    def test_gate_error_validation(self):
        with pytest.raises(ValueError):
            GateError(-0.01)
        with pytest.raises(ValueError):
            GateError(0.01, "drift")
        assert not GateError(0.0).enabled


class TestTemperatureShift:
    def test_effective_temperature_round_trip(self):
        assert effective_temperature(math.exp(-4 / 2.5), 4) == pytest.approx(2.5)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            effective_temperature(1.0, 4)

    def test_over_rotation_heats_the_lattice(self):
        temperature, delta_p = 2.5, 0.05
        shifted = systematic_rotation_error(math.exp(-4 / temperature), delta_p)
        t_eff = effective_temperature(shifted, 4)
        shift = t_eff - temperature
        predicted = predicted_temperature_shift(temperature, 2.0, delta_p)

        assert required_accuracy(temperature, 2.0, 0.1) < delta_p
        assert t_eff == pytest.approx(2.88, abs=0.02)
        assert shift > 0.1
        assert predicted / 2 <= shift <= 2 * predicted
