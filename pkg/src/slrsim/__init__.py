"""Coupled-dipole simulation of plasmonic and excitonic lattice resonances."""
__version__ = "0.1.0"

from .constants import HBAR, HBAR_C, PhysicsError
from .lattice import CrossLatticeSpec, LatticeSpec, ParticleSpec

__all__ = ["HBAR", "HBAR_C", "PhysicsError", "CrossLatticeSpec", "LatticeSpec", "ParticleSpec", "__version__"]
