"""Perturbative pump-probe response of an emitter array.

Spectra use F(omega) = int f(t) exp(i omega t) dt with t in eV^-1 (hbar = 1),
so f(t) = sum_j F_j exp(-i omega_j t) d_omega / 2 pi on a uniform grid.
Orders: first-order 1-2 coherence, second-order zero-momentum population of
level 2, third-order 2-3 coherence linear in the probe.
"""
from dataclasses import dataclass

import numpy as np
from scipy.signal import fftconvolve

from .constants import HBAR, HBAR_C, PhysicsError
from .exciton import InversionError
from .lattice import lattice_sum_self

FWHM_TO_SIGMA = 1 / (2 * np.sqrt(2 * np.log(2)))
EPS_REG = 1e-6
EDGE_DECAY = 1e-12


@dataclass(frozen=True)
class PulseSpec:
    center_omega: float
    temporal_width: float  # fs, Gaussian standard deviation of the field envelope
    amplitude: float = 1.0
    delay: float = 0.0  # fs

    def __post_init__(self):
        if not self.temporal_width > 0:
            raise PhysicsError("pulse temporal width must be positive")
        if not self.center_omega > 0:
            raise PhysicsError("pulse center frequency must be positive")

    @classmethod
    def from_fwhm(cls, center_omega, fwhm_fs, amplitude=1.0, delay=0.0):
        return cls(center_omega, fwhm_fs * FWHM_TO_SIGMA, amplitude, delay)

    @property
    def tau(self):
        """Envelope width in eV^-1."""
        return self.temporal_width / HBAR

    @property
    def spectral_sigma(self):
        return 1 / self.tau


@dataclass(frozen=True)
class FrequencyGrid:
    """Uniform grid omega_i = (start + i) * spacing, i = 0..count-1."""
    start: int
    count: int
    spacing: float

    def __post_init__(self):
        if self.count < 1 or not self.spacing > 0:
            raise ValueError("grid needs count >= 1 and positive spacing")

    @classmethod
    def centered(cls, center, half_width, spacing):
        c = int(round(center / spacing))
        h = int(round(half_width / spacing))
        return cls(c - h, 2 * h + 1, spacing)

    @property
    def omegas(self):
        return (self.start + np.arange(self.count)) * self.spacing

    @property
    def stop(self):
        return self.start + self.count - 1

    def zero_index(self):
        if not self.start <= 0 <= self.stop:
            raise PhysicsError("population grid must contain omega = 0")
        return -self.start

    def is_symmetric(self):
        return self.start == -self.stop


def pulse_spectrum(p, grid):
    x = grid.omegas - p.center_omega
    tau = p.tau
    return p.amplitude * tau * np.sqrt(2 * np.pi) * np.exp(-0.5 * (tau * x) ** 2) * np.exp(1j * x * p.delay / HBAR)


def check_pulse_coverage(p, grid, decay=EDGE_DECAY):
    """Pulse spectrum must have decayed below `decay` of its peak at both grid edges."""
    w = grid.omegas
    if not w[0] < p.center_omega < w[-1]:
        raise PhysicsError("pulse center lies outside its frequency grid")
    edge = max(abs(w[0] - p.center_omega), abs(w[-1] - p.center_omega))
    near = min(abs(w[0] - p.center_omega), abs(w[-1] - p.center_omega))
    if np.exp(-0.5 * (p.tau * near) ** 2) > decay:
        raise PhysicsError(f"grid half-width {near:.4g} eV truncates the pulse spectrum "
                           f"(needs >= {np.sqrt(-2 * np.log(decay)) / p.tau:.4g} eV)")
    return edge


def conj_reflect(arr, grid):
    """Spectrum of the complex-conjugated time signal: G(omega) = conj(F(-omega))."""
    return np.conj(arr[::-1]), FrequencyGrid(-grid.stop, grid.count, grid.spacing)


def convolve(f, grid_f, g, grid_g, out_grid, method="direct"):
    """(f*g)(omega) = d_omega/2pi sum_j f(omega_j) g(omega - omega_j), sampled on out_grid.

    Values outside the supports are treated as zero.
    """
    if not (grid_f.spacing == grid_g.spacing == out_grid.spacing):
        raise ValueError("convolution requires grids with identical spacing")
    if method == "direct":
        full = np.convolve(f, g)
    elif method == "fft":
        full = fftconvolve(f, g)
    else:
        raise ValueError(f"unknown convolution method {method!r}")
    full = full * (grid_f.spacing / (2 * np.pi))
    start = grid_f.start + grid_g.start
    idx = out_grid.start - start + np.arange(out_grid.count)
    ok = (idx >= 0) & (idx < len(full))
    out = np.zeros(out_grid.count, complex)
    out[ok] = full[idx[ok]]
    return out


def freq_convolution(f, g, grid, method="direct"):
    """Convolution of two arrays sampled on the same grid, returned on that grid."""
    if len(f) != grid.count or len(g) != grid.count:
        raise ValueError("both arrays must live on the given grid")
    return convolve(f, grid, g, grid, grid, method)


def pole_kernel(grid, eps=EPS_REG):
    """Cell average of 1/(eps - i omega) over each grid bin.

    Keeps the displaced pole integrable when eps is far below the spacing:
    the omega = 0 bin carries ~pi/d_omega, the others ~i/omega.
    """
    w = grid.omegas
    lo, hi = w - grid.spacing / 2, w + grid.spacing / 2
    re = np.arctan(hi / eps) - np.arctan(lo / eps)
    im = 0.5 * np.log((eps**2 + hi**2) / (eps**2 + lo**2))
    return (re + 1j * im) / grid.spacing


def imag_time(B):
    """Spectrum of Im b(t) given the spectrum B of b(t) on a symmetric grid."""
    return (B - np.conj(B[::-1])) / 2j


def first_order_coherence(lattice, t12, p_inv0, pump, k_parallel, grid, q=None, S=None):
    """1-2 coherence at first order in the pump; zero unless q == k_parallel."""
    if p_inv0 > 0:
        raise InversionError(f"initial inversion {p_inv0} > 0 is outside the perturbative model")
    if q is not None and q != k_parallel:
        return np.zeros(grid.count, complex)
    w = grid.omegas
    if S is None:
        S = lattice_sum_self(lattice, t12.as_particle(), k_parallel, w)
    den = 1j * p_inv0 * S - 1j * (w - t12.omega_t) + t12.gamma_t_rad / 2
    return -p_inv0 * pulse_spectrum(pump, grid) / den


def population_rhs(sigma, grid, t12, pump, S, pop_grid, method="direct", im_mode="time"):
    """Right-hand side of the population equation, -i omega P(omega), on pop_grid."""
    if not pop_grid.is_symmetric():
        raise PhysicsError("population grid must be symmetric about omega = 0")
    sc, gc = conj_reflect(sigma, grid)
    fc, _ = conj_reflect(pulse_spectrum(pump, grid), grid)
    f = pulse_spectrum(pump, grid)
    A = convolve(sc, gc, sigma, grid, pop_grid, method)
    B = convolve(sc, gc, S * sigma, grid, pop_grid, method)
    if im_mode == "time":
        imB = imag_time(B)
    elif im_mode == "pointwise":
        imB = B.imag
    else:
        raise ValueError(f"unknown im_mode {im_mode!r}")
    src = convolve(fc, gc, sigma, grid, pop_grid, method) + convolve(sc, gc, f, grid, pop_grid, method)
    return -t12.gamma_t_rad * A - 2 * imB + src


def divide_by_pole(rhs, pop_grid, eps=EPS_REG):
    """P = rhs / (eps - i omega).

    The omega = 0 value of rhs (net transferred population) goes through the
    cell-averaged kernel; the remainder vanishes at omega = 0 and is divided
    pointwise, using its derivative for the removable centre bin.
    """
    c = pop_grid.zero_index()
    w = pop_grid.omegas
    r0 = rhs[c]
    rest = rhs - r0
    out = np.empty_like(rest)
    nz = np.arange(len(w)) != c
    out[nz] = rest[nz] / (eps - 1j * w[nz])
    if 0 < c < len(w) - 1:
        out[c] = 1j * (rest[c + 1] - rest[c - 1]) / (2 * pop_grid.spacing)
    else:
        out[c] = 0
    return r0 * pole_kernel(pop_grid, eps) + out


def second_order_population(first_order, lattice, t12, pump, k_parallel, grid, pop_grid, q=0.0,
                            eps=EPS_REG, method="direct", im_mode="time", S=None):
    """Zero-momentum level-2 population at second order in the pump."""
    if q != 0:
        return np.zeros(pop_grid.count, complex)
    if S is None:
        S = lattice_sum_self(lattice, t12.as_particle(), k_parallel, grid.omegas)
    rhs = population_rhs(first_order, grid, t12, pump, S, pop_grid, method, im_mode)
    return divide_by_pole(rhs, pop_grid, eps)


def third_order_coherence(population, pop_grid, lattice, t23, probe, k_parallel, grid, q=None,
                          method="direct", S=None):
    """2-3 coherence driven by the probe acting on the pump-made population."""
    if q is not None and q != k_parallel:
        return np.zeros(grid.count, complex)
    w = grid.omegas
    if S is None:
        S = lattice_sum_self(lattice, t23.as_particle(), k_parallel, w)
    drive = convolve(pulse_spectrum(probe, grid), grid, population, pop_grid, grid, method)
    return drive / (t23.gamma_t_rad / 2 - 1j * S - 1j * (w - t23.omega_t))


def band_extinction(sigma, pulse, grid, t, floor=1e-3):
    """Extinction-like lineshape 3 pi gamma (hbar c)^2 (omega/omega_t^3) Re[sigma/F].

    Re[sigma/F] is Im[i sigma/F], the convention under which the first-order
    band equals the static-population extinction. Samples where |F| is below
    floor * max|F| are nan.
    """
    F = pulse_spectrum(pulse, grid)
    keep = np.abs(F) > floor * np.abs(F).max() if np.any(F) else np.zeros(len(F), bool)
    w = grid.omegas
    out = np.full(len(w), np.nan)
    pre = 3 * np.pi * t.gamma_t_rad * HBAR_C**2 * w / t.omega_t**3
    out[keep] = pre[keep] * np.real(sigma[keep] / F[keep])
    return out


def probe_extinction_spectrum(third_order, probe, grid, t23, floor=1e-3):
    return band_extinction(third_order, probe, grid, t23, floor)


def to_time(arr, grid, ts):
    """Inverse transform f(t) = d_omega/2pi sum F(omega) exp(-i omega t); t in eV^-1."""
    w = grid.omegas
    return np.array([np.exp(-1j * w * t) @ arr for t in np.atleast_1d(ts)]) * grid.spacing / (2 * np.pi)


@dataclass
class PumpProbeResult:
    coh_grid: FrequencyGrid
    pop_grid: FrequencyGrid
    probe_grid: FrequencyGrid
    first: np.ndarray
    population: np.ndarray
    third: np.ndarray
    pump_band: np.ndarray
    probe_band: np.ndarray


def run_pump_probe(lattice, t12, t23, pump, probe, k_parallel=0.0, p_inv0=-1.0, half_width=0.5,
                   spacing=1e-4, eps=EPS_REG, method="direct", im_mode="time", floor=1e-3):
    g12 = FrequencyGrid.centered(pump.center_omega, half_width, spacing)
    g23 = FrequencyGrid.centered(probe.center_omega, half_width, spacing)
    g0 = FrequencyGrid.centered(0.0, half_width, spacing)
    check_pulse_coverage(pump, g12)
    check_pulse_coverage(probe, g23)
    if g12.omegas[0] <= 0:
        raise PhysicsError("pump grid extends to non-positive frequencies")
    S12 = lattice_sum_self(lattice, t12.as_particle(), k_parallel, g12.omegas)
    S23 = lattice_sum_self(lattice, t23.as_particle(), k_parallel, g23.omegas)
    s1 = first_order_coherence(lattice, t12, p_inv0, pump, k_parallel, g12, S=S12)
    P = second_order_population(s1, lattice, t12, pump, k_parallel, g12, g0, eps=eps, method=method,
                                im_mode=im_mode, S=S12)
    s3 = third_order_coherence(P, g0, lattice, t23, probe, k_parallel, g23, method=method, S=S23)
    return PumpProbeResult(g12, g0, g23, s1, P, s3,
                           band_extinction(s1, pump, g12, t12, floor),
                           probe_extinction_spectrum(s3, probe, g23, t23, floor))
