"""Retarded dipole lattice sums for a finite 1D chain."""
from dataclasses import dataclass
from functools import partial

import numpy as np

from .constants import HBAR_C, X_HAT, Y_HAT, PhysicsError, unit_vector
from .greens import greens_projected
from .parallel import blockwise


@dataclass(frozen=True)
class ParticleSpec:
    omega0: float
    gamma0_rad: float
    orientation: tuple = tuple(Y_HAT)

    def __post_init__(self):
        if not self.omega0 > 0:
            raise PhysicsError("omega0 must be positive")
        if not self.gamma0_rad > 0:
            raise PhysicsError("gamma0_rad must be positive")
        object.__setattr__(self, "orientation", tuple(unit_vector(self.orientation)))


@dataclass(frozen=True)
class LatticeSpec:
    spacing_a: float
    site_count_M: int
    axis: tuple = tuple(X_HAT)

    def __post_init__(self):
        if not self.spacing_a > 0:
            raise PhysicsError("lattice spacing must be positive")
        if int(self.site_count_M) != self.site_count_M or self.site_count_M < 2 or self.site_count_M % 2:
            raise PhysicsError("site_count_M must be an even integer >= 2")
        object.__setattr__(self, "axis", tuple(unit_vector(self.axis)))

    @property
    def half(self):
        return self.site_count_M // 2

    def positions(self, n):
        return np.outer(np.asarray(n, dtype=float) * self.spacing_a, self.axis)


@dataclass(frozen=True)
class CrossLatticeSpec:
    offset_rm: tuple
    partner_orientation: tuple = tuple(Y_HAT)
    amplitude_ratio: float = 0.0

    def __post_init__(self):
        if self.amplitude_ratio < 0:
            raise PhysicsError("amplitude_ratio must be non-negative")
        object.__setattr__(self, "offset_rm", tuple(float(x) for x in self.offset_rm))
        object.__setattr__(self, "partner_orientation", tuple(unit_vector(self.partner_orientation)))


def _check_omega(omega):
    omega = np.atleast_1d(np.asarray(omega, dtype=float))
    if np.any(omega <= 0):
        raise PhysicsError("frequency must be positive")
    return omega


def _prefactor(gamma, omega_ref, omega):
    return 3 * np.pi * gamma * HBAR_C * omega**2 / omega_ref**3


def _self_block(lattice, gamma, omega_ref, orient, q, omega):
    n = np.arange(1, lattice.half + 1)
    r = lattice.positions(n)
    u = np.asarray(orient)
    g = greens_projected(r, omega, u, u)
    # pair (n, -n): G is even in r, phases give 2cos(q n a); pairs ordered n = 1, 2, ...
    pairs = g * (2 * np.cos(q * n * lattice.spacing_a))[None, :]
    return _prefactor(gamma, omega_ref, omega) * pairs.sum(axis=1)


def _cross_block(lattice, gamma, omega_ref, ratio, u, v, rm, q, omega):
    h = lattice.half
    n = np.empty(2 * h + 1)
    n[0] = 0
    n[1::2] = np.arange(1, h + 1)
    n[2::2] = -np.arange(1, h + 1)
    r = lattice.positions(n) + np.asarray(rm)
    phase = np.exp(-1j * (r @ (q * np.asarray(lattice.axis))))
    g = greens_projected(r, omega, np.asarray(u), np.asarray(v))
    return _prefactor(gamma, omega_ref, omega) * ratio * (g * phase[None, :]).sum(axis=1)


def _scalar_or_array(out, omega):
    return out[0] if np.ndim(omega) == 0 else out


def lattice_sum_self(lattice, particle, q, omega, workers=1):
    """S_q(omega) in eV; zero-displacement term excluded."""
    w = _check_omega(omega)
    fn = partial(_self_block, lattice, particle.gamma0_rad, particle.omega0, particle.orientation, float(q))
    return _scalar_or_array(blockwise(fn, w, workers), omega)


def lattice_sum_cross(lattice, particle, cross, q, omega, workers=1):
    """Particle/partner sum including the same-cell (n = 0) term, shifted by r_m."""
    w = _check_omega(omega)
    rm = np.asarray(cross.offset_rm)
    offsets = lattice.positions(np.arange(-lattice.half, lattice.half + 1)) + rm
    if np.any(np.linalg.norm(offsets, axis=1) == 0):
        raise PhysicsError("cross lattice displacement of zero length hits the Green's tensor singularity")
    fn = partial(_cross_block, lattice, particle.gamma0_rad, particle.omega0, cross.amplitude_ratio,
                 particle.orientation, cross.partner_orientation, tuple(rm), float(q))
    return _scalar_or_array(blockwise(fn, w, workers), omega)


def lattice_sum_raman_self(lattice, cross, reference, q, omega, workers=1):
    """Partner-partner sum: self-sum structure with ratio**2 and the partner orientation."""
    w = _check_omega(omega)
    fn = partial(_self_block, lattice, reference.gamma0_rad * cross.amplitude_ratio**2, reference.omega0,
                 cross.partner_orientation, float(q))
    return _scalar_or_array(blockwise(fn, w, workers), omega)
