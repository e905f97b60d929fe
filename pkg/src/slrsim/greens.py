"""Free-space dyadic Green's tensor and its regularized self term."""
import numpy as np

from .constants import HBAR_C, PhysicsError, wavenumber


def _radial_coefficients(k, r):
    # G = A*1 + B*rhat rhat
    eikr = np.exp(1j * k * r) / (4 * np.pi * k**2)
    A = eikr * (k**2 / r + 1j * k / r**2 - 1 / r**3)
    B = eikr * (-(k**2) / r - 3j * k / r**2 + 3 / r**3)
    return A, B


def greens_free_space(r, omega):
    """G(r, omega) in nm^-1 for displacement(s) r of shape (..., 3)."""
    r = np.asarray(r, dtype=float)
    k = wavenumber(omega)
    dist = np.linalg.norm(r, axis=-1)
    if np.any(dist == 0):
        raise PhysicsError("Green's tensor is singular at zero displacement; use self_term_im")
    A, B = _radial_coefficients(k, dist)
    rhat = r / dist[..., None]
    outer = rhat[..., :, None] * rhat[..., None, :]
    return A[..., None, None] * np.eye(3) + B[..., None, None] * outer


def greens_projected(r, omega, u, v):
    """u^T G(r, omega) v without building the full tensor.

    r has shape (n, 3); omega may be an array of shape (m,), giving (m, n).
    """
    r = np.asarray(r, dtype=float)
    dist = np.linalg.norm(r, axis=-1)
    if np.any(dist == 0):
        raise PhysicsError("Green's tensor is singular at zero displacement")
    k = np.atleast_1d(wavenumber(omega))[:, None]
    A, B = _radial_coefficients(k, dist[None, :])
    rhat = r / dist[:, None]
    return A * float(np.dot(u, v)) + B * ((rhat @ u) * (rhat @ v))[None, :]


def greens_apply(r, omega, vec):
    """G(r, omega) @ vec for displacements r of shape (..., 3); returns (..., 3)."""
    r = np.asarray(r, dtype=float)
    k = wavenumber(omega)
    dist = np.linalg.norm(r, axis=-1)
    if np.any(dist == 0):
        raise PhysicsError("Green's tensor is singular at zero displacement")
    A, B = _radial_coefficients(k, dist)
    rhat = r / dist[..., None]
    return A[..., None] * vec + (B * (rhat @ vec))[..., None] * rhat


def self_term_im(omega, orientation=None):
    """Im of eps.G(0, omega).eps, i.e. omega/(6 pi hbar c); isotropic, so the
    orientation is accepted only for interface symmetry. The divergent real
    part is defined to vanish."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise PhysicsError("frequency must be positive")
    return omega / (6 * np.pi * HBAR_C)
