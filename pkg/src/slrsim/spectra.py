"""Frequency grids and lineshape measurements."""
import numpy as np

from .constants import HBAR_C


def check_grid(omegas):
    omegas = np.asarray(omegas, dtype=float)
    if omegas.ndim != 1 or len(omegas) < 2:
        raise ValueError("frequency grid must be a 1D array with at least two points")
    if np.any(omegas <= 0):
        raise ValueError("frequency grid must be strictly positive")
    if np.any(np.diff(omegas) <= 0):
        raise ValueError("frequency grid must be strictly increasing")
    return omegas


def ra_energies(a, k_parallel=0.0, orders=(1,)):
    """Rayleigh-anomaly energies hbar*c*|k +- 2 pi m / a| for the given orders."""
    out = []
    for m in orders:
        g = 2 * np.pi * m / a
        out += [HBAR_C * abs(k_parallel + g), HBAR_C * abs(k_parallel - g)]
    return sorted(set(out))


def piecewise_grid(lo, hi, anchors, fine=5e-4, coarse=5e-3, window=0.1):
    """Coarse uniform grid refined to `fine` spacing within +-window of each anchor.

    Points are generated on integer multiples of the step so that grids are
    reproducible bit for bit.
    """
    pts = [np.arange(np.ceil(lo / coarse), np.floor(hi / coarse) + 1) * coarse]
    for c in anchors:
        a, b = max(lo, c - window), min(hi, c + window)
        if a < b:
            pts.append(np.arange(np.ceil(a / fine), np.floor(b / fine) + 1) * fine)
    w = np.unique(np.round(np.concatenate(pts), 12))
    return w[(w >= lo) & (w <= hi) & (w > 0)]


def peak_and_fwhm(omegas, values, lo=None, hi=None):
    """Grid argmax within [lo, hi] and FWHM from linearly interpolated half-maximum crossings.

    Returns (omega_peak, peak_value, fwhm); fwhm is nan if a crossing is missing.
    """
    omegas = np.asarray(omegas, dtype=float)
    values = np.asarray(values, dtype=float)
    sel = np.ones(len(omegas), bool)
    if lo is not None:
        sel &= omegas >= lo
    if hi is not None:
        sel &= omegas <= hi
    idx = np.flatnonzero(sel & np.isfinite(values))
    i = idx[np.argmax(values[idx])]
    peak = values[i]
    half = peak / 2
    left = right = np.nan
    j = i
    while j > 0 and values[j] > half:
        j -= 1
    if values[j] <= half and j < i:
        left = np.interp(half, [values[j], values[j + 1]], [omegas[j], omegas[j + 1]])
    j = i
    while j < len(values) - 1 and values[j] > half:
        j += 1
    if values[j] <= half and j > i:
        right = np.interp(half, [values[j], values[j - 1]], [omegas[j], omegas[j - 1]])
    return omegas[i], peak, right - left


def local_minima(values):
    v = np.asarray(values)
    return np.flatnonzero((v[1:-1] < v[:-2]) & (v[1:-1] < v[2:])) + 1
