"""Bare nanoparticle array: polarizability, extinction, dispersion, Rayleigh anomalies."""
import numpy as np

from .constants import HBAR_C, PhysicsError
from .lattice import lattice_sum_self
from .results import SpectrumResult
from .spectra import check_grid


def polarizability_denominator(particle, S, omega):
    return (particle.omega0 - omega) - 0.5j * particle.gamma0_rad - S


def reduced_polarizability(particle, S, omega):
    """Scalar effective polarizability in nm^3 (projected on the dipole orientation)."""
    c = 3 * np.pi * HBAR_C**3 * particle.gamma0_rad / particle.omega0**3
    return c / polarizability_denominator(particle, S, omega)


def extinction_point(particle, S, omega):
    """Extinction cross-section in nm^2; for S = 0 at resonance this is 3 lambda0^2 / (2 pi)."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise PhysicsError("frequency must be positive")
    pre = 3 * np.pi * particle.gamma0_rad * HBAR_C**2 * omega / particle.omega0**3
    return pre * np.imag(1 / polarizability_denominator(particle, S, omega))


def extinction_spectrum(lattice, particle, k_parallel, omegas, workers=1):
    omegas = check_grid(omegas)
    S = lattice_sum_self(lattice, particle, k_parallel, omegas, workers)
    return SpectrumResult(omegas, extinction_point(particle, S, omegas), units="nm^2",
                          metadata={"k_parallel": float(k_parallel)})


def dispersion_map(lattice, particle, k_parallels, omegas, workers=1):
    omegas = check_grid(omegas)
    ks = np.atleast_1d(np.asarray(k_parallels, dtype=float))
    if len(ks) > 1 and np.any(np.diff(ks) <= 0):
        raise ValueError("k_parallel grid must be strictly increasing")
    vals = np.array([extinction_spectrum(lattice, particle, k, omegas, workers).values for k in ks])
    return SpectrumResult(omegas, vals, k_parallels=ks, units="nm^2")


def rayleigh_anomaly(a, theta_inc, m=1):
    """Wavelengths (a/m)(1 + sin theta), (a/m)(1 - sin theta) in nm."""
    if a <= 0 or m < 1 or abs(theta_inc) >= np.pi / 2:
        raise PhysicsError("need a > 0, m >= 1 and |theta| < pi/2")
    s = np.sin(theta_inc)
    return a / m * (1 + s), a / m * (1 - s)
