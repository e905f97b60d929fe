"""Multi-level emitter arrays with static populations."""
import warnings
from dataclasses import dataclass

import numpy as np

from .constants import HBAR_C, Y_HAT, PhysicsError, unit_vector
from .lattice import ParticleSpec, lattice_sum_self
from .results import SpectrumResult
from .spectra import check_grid


class InversionError(PhysicsError):
    """Population inversion (p_inv > 0) is outside the static-population model."""


@dataclass(frozen=True)
class TransitionSpec:
    lower: str
    upper: str
    omega_t: float
    gamma_t_rad: float
    orientation: tuple = tuple(Y_HAT)
    dipole_allowed: bool = True

    def __post_init__(self):
        if not self.omega_t > 0:
            raise PhysicsError("transition frequency must be positive")
        if self.gamma_t_rad < 0:
            raise PhysicsError("radiative width must be non-negative")
        if (self.gamma_t_rad == 0) == self.dipole_allowed:
            raise PhysicsError("gamma_t_rad must vanish exactly when the transition is dipole-forbidden")
        object.__setattr__(self, "orientation", tuple(unit_vector(self.orientation)))

    def as_particle(self):
        return ParticleSpec(self.omega_t, self.gamma_t_rad, self.orientation)


class PopulationState:
    def __init__(self, populations):
        pops = {str(k): float(v) for k, v in dict(populations).items()}
        if any(not 0 <= v <= 1 for v in pops.values()):
            raise PhysicsError("populations must lie in [0, 1]")
        if abs(sum(pops.values()) - 1) > 1e-12:
            raise PhysicsError("populations must sum to 1")
        self.populations = pops

    def inversion(self, t):
        return self.populations.get(t.upper, 0.0) - self.populations.get(t.lower, 0.0)


def transition_response(t, p_inv, S, omega):
    """Response factor -i p / [i p S - i(omega - omega_t) + gamma/2].

    Equal to -p / [(omega_t - omega) + p S - i gamma/2]; for p = -1 this is the
    bare oscillator 1 / [(omega_t - omega) - S - i gamma/2].
    """
    if p_inv > 0:
        raise InversionError(f"p_inv = {p_inv} > 0: inverted transitions are outside the model")
    if p_inv == 0:
        return np.zeros(np.broadcast(S, omega).shape, complex)
    return -1j * p_inv / (1j * p_inv * S - 1j * (omega - t.omega_t) + t.gamma_t_rad / 2)


def transition_extinction(t, p_inv, S, omega):
    pre = 3 * np.pi * t.gamma_t_rad * HBAR_C**2 * omega / t.omega_t**3
    return pre * np.imag(transition_response(t, p_inv, S, omega))


def check_separation(transitions, factor=5.0):
    allowed = [t for t in transitions if t.dipole_allowed]
    if len(allowed) < 2:
        return None
    gmax = max(t.gamma_t_rad for t in allowed)
    for i, a in enumerate(allowed):
        for b in allowed[i + 1:]:
            if abs(a.omega_t - b.omega_t) < factor * gmax:
                return (f"transitions {a.lower}->{a.upper} and {b.lower}->{b.upper} are closer than "
                        f"{factor:g} linewidths; neglected cross-couplings may matter")
    return None


def exciton_extinction_spectrum(lattice, transitions, pop, k_parallel, omegas, workers=1):
    omegas = check_grid(omegas)
    meta = {}
    msg = check_separation(transitions)
    if msg:
        meta["warning"] = msg
        warnings.warn(msg, stacklevel=2)
    total = np.zeros(len(omegas))
    for t in transitions:
        if not t.dipole_allowed:
            continue
        p = pop.inversion(t)
        if p > 0:
            raise InversionError(f"transition {t.lower}->{t.upper} is inverted (p_inv = {p})")
        if p == 0:
            continue
        S = lattice_sum_self(lattice, t.as_particle(), k_parallel, omegas, workers)
        total += transition_extinction(t, p, S, omegas)
    return SpectrumResult(omegas, total, metadata=meta)
