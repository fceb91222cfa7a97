from .spin_lattice import Color, LatticeMode, NodeInputs, Site, SpinLattice

__all__ = ["Color", "LatticeMode", "NodeInputs", "Site", "SpinLattice"]
