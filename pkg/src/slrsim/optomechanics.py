"""Optomechanical dressing of the lattice resonance by Raman-active molecules."""
import warnings
from dataclasses import dataclass

import numpy as np

from .constants import Y_HAT, PhysicsError, unit_vector
from .lattice import CrossLatticeSpec, lattice_sum_cross, lattice_sum_raman_self, lattice_sum_self
from .linear_response import extinction_point
from .results import SpectrumResult
from .spectra import check_grid

RED, BLUE = "red", "blue"   # anti-Stokes (+) and Stokes (-) sidebands
SINGULAR = 1e-12


@dataclass(frozen=True)
class OMParams:
    omega_vib: float
    omega_laser: float
    branch: str = RED
    gamma_vib: float = 0.0
    raman_ratio: float = 0.0
    offset_rm: tuple = (0.0, 0.0, 0.0)
    raman_orientation: tuple = tuple(Y_HAT)

    def __post_init__(self):
        if not self.omega_vib > 0 or not self.omega_laser > 0:
            raise PhysicsError("omega_vib and omega_laser must be positive")
        if self.branch not in (RED, BLUE):
            raise PhysicsError(f"branch must be '{RED}' or '{BLUE}'")
        if self.gamma_vib < 0 or self.raman_ratio < 0:
            raise PhysicsError("gamma_vib and raman_ratio must be non-negative")
        object.__setattr__(self, "raman_orientation", tuple(unit_vector(self.raman_orientation)))

    @property
    def sign(self):
        return 1 if self.branch == RED else -1

    @property
    def sideband(self):
        return self.omega_laser + self.sign * self.omega_vib

    def cross(self):
        return CrossLatticeSpec(self.offset_rm, self.raman_orientation, self.raman_ratio)


def gamma_p(params, particle):
    """Laser-induced radiative rate of the Raman dipoles."""
    return particle.gamma0_rad * params.raman_ratio**2 * (params.sideband / particle.omega0) ** 3


def molecular_effective_width(params, gp):
    # broadened on the red branch (cooling), narrowed on the blue branch (heating)
    return params.gamma_vib + params.sign * gp


def om_self_energy(S_om, S_p, params, omega, gp):
    """Branch-signed optomechanical self-energy; singular samples come back as nan."""
    s = params.sign
    den = 1j * (params.sideband - omega) + molecular_effective_width(params, gp) / 2 - s * 1j * S_p
    den = np.asarray(den, dtype=complex)
    S_om = np.asarray(S_om)
    bad = np.abs(den) < SINGULAR
    with np.errstate(divide="ignore", invalid="ignore"):
        out = s * 1j * S_om**2 / np.where(bad, 1.0, den)
    # an uncoupled vibration contributes nothing, even on its own pole
    return np.where(bad & (S_om != 0), np.nan + 0j, out)


def rwa_warning(params, particle):
    """Blue branch: flag overlap of the anti-Stokes line with the broad plasmon background."""
    if params.branch != BLUE:
        return None
    anti_stokes = params.omega_laser + params.omega_vib
    if abs(anti_stokes - particle.omega0) < 2 * particle.gamma0_rad:
        return (f"anti-Stokes sideband at {anti_stokes:.4f} eV lies within 2*gamma0 of the plasmon "
                f"resonance at {particle.omega0:.4f} eV; rotating-wave results are unreliable here")
    return None


def om_extinction_spectrum(lattice, particle, params, k_parallel, omegas, workers=1):
    omegas = check_grid(omegas)
    cross = params.cross()
    S = lattice_sum_self(lattice, particle, k_parallel, omegas, workers)
    S_om = lattice_sum_cross(lattice, particle, cross, k_parallel, omegas, workers)
    S_p = lattice_sum_raman_self(lattice, cross, particle, k_parallel, omegas, workers)
    gp = gamma_p(params, particle)
    sigma = om_self_energy(S_om, S_p, params, omegas, gp)
    meta = {"gamma_p": gp, "branch": params.branch, "singular_points": int(np.isnan(sigma).sum())}
    msg = rwa_warning(params, particle)
    if msg:
        meta["warning"] = msg
        warnings.warn(msg, stacklevel=2)
    return SpectrumResult(omegas, extinction_point(particle, S + sigma, omegas), metadata=meta)


def single_mode_om_spectrum(g, particle, params, omegas, gp=None):
    """Single plasmon mode coupled to one Raman dipole, lattice sums dropped.

    Returns (cavity, molecular) extinction, each divided pointwise by its g = 0 curve.
    gp defaults to the radiative formula but may be set directly.
    """
    omegas = np.asarray(omegas, dtype=float)
    if gp is None:
        gp = gamma_p(params, particle)
    s = params.sign
    w0, G0 = particle.omega0, particle.gamma0_rad
    width = molecular_effective_width(params, gp)
    det_m = params.sideband - omegas
    sigma_c = s * 1j * g**2 / (1j * det_m + width / 2)
    cav_bare = np.imag(1 / ((w0 - omegas) - 0.5j * G0))
    cav = np.imag(1 / ((w0 - omegas) - 0.5j * G0 - sigma_c)) / cav_bare
    # mirror image: the vibration dressed by the plasmon mode
    sigma_m = s * 1j * g**2 / (1j * (w0 - omegas) + G0 / 2)
    mol_bare = np.imag(1 / (det_m - 0.5j * width))
    mol = np.imag(1 / (det_m - 0.5j * width - sigma_m)) / mol_bare
    return cav, mol
