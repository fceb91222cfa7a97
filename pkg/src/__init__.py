"""Type-II quantum computer simulator for the Metropolis Ising model."""

__version__ = "0.1.0"
