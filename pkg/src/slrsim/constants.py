"""Unit conventions and small vector helpers.

hbar = 1 throughout: energies and frequencies in eV, lengths in nm, times in fs.
Every speed of light in the formulas appears as HBAR_C.
"""
import numpy as np

HBAR_C = 197.3269804  # eV nm
HBAR = 0.6582119569  # eV fs

X_HAT = np.array([1.0, 0.0, 0.0])
Y_HAT = np.array([0.0, 1.0, 0.0])
Z_HAT = np.array([0.0, 0.0, 1.0])


class PhysicsError(ValueError):
    """Raised when inputs fall outside the validity domain of a model."""


def unit_vector(v, tol=1e-12):
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise PhysicsError(f"expected a 3-vector, got shape {v.shape}")
    n = np.linalg.norm(v)
    if abs(n - 1.0) > tol:
        raise PhysicsError(f"orientation must be a unit vector (norm {n!r})")
    return v


def normalized(v):
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v)
    if n == 0:
        raise PhysicsError("cannot normalize a zero vector")
    return v / n


def sandwich(u, D, v):
    """u^T D v for 3-vectors u, v and a (..., 3, 3) dyadic D."""
    return np.einsum("i,...ij,j->...", np.asarray(u), np.asarray(D), np.asarray(v))


def wavenumber(omega):
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise PhysicsError("frequency must be positive")
    return omega / HBAR_C


def wavelength(omega):
    return 2 * np.pi / wavenumber(omega)


def omega_from_wavelength(lam_nm):
    return 2 * np.pi * HBAR_C / lam_nm
