"""Shared fixtures for the simulator tests."""

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.circuits import IsingParams, NodeKernel, build_1d_circuit, build_2d_circuit
from src.engine import Stream


class FixedStream:
    """Stand-in for SiteStream that hands out chosen update draws."""

    def __init__(self, update, gate=None):
        self._blocks = {Stream.UPDATE: np.asarray(update, dtype=float)}
        for k, values in enumerate(gate or []):
            self._blocks[Stream(Stream.GATE_P1 + k)] = np.asarray(values, dtype=float)

    def draws(self, stream=Stream.UPDATE):
        return self._blocks[stream]

    def u(self, site_index, stream=Stream.UPDATE):
        return float(self._blocks[stream][site_index])


@pytest.fixture
def fixed_stream():
    return FixedStream


@pytest.fixture(scope="session")
def node_1d():
    return build_1d_circuit()


@pytest.fixture(scope="session")
def node_2d():
    return build_2d_circuit()


@pytest.fixture(scope="session")
def kernel_1d(node_1d):
    return NodeKernel(*node_1d)


@pytest.fixture(scope="session")
def kernel_2d(node_2d):
    return NodeKernel(*node_2d)


@pytest.fixture
def params():
    return IsingParams(temperature=2.0)


@pytest.fixture(scope="session")
def log_temperatures():
    """25 temperatures log-spaced over [0.5, 10]."""
    return np.logspace(np.log10(0.5), np.log10(10.0), 25)
