"""Near- and far-field intensity radiated by the driven chain in the xz-plane."""
from dataclasses import dataclass

import numpy as np

from .constants import Z_HAT, PhysicsError, wavenumber
from .greens import greens_apply
from .lattice import lattice_sum_self
from .linear_response import reduced_polarizability

MASK_RADIUS = 10.0  # nm
COINCIDENT = 1e-9


@dataclass(frozen=True)
class FieldGrid:
    x_range: tuple
    z_range: tuple
    nx: int
    nz: int

    def __post_init__(self):
        if self.nx < 2 or self.nz < 1:
            raise PhysicsError("field grid needs nx >= 2 and nz >= 1")
        if not self.x_range[1] > self.x_range[0] or self.z_range[1] < self.z_range[0]:
            raise PhysicsError("field grid ranges must be increasing")

    @property
    def xs(self):
        return np.linspace(*self.x_range, self.nx)

    @property
    def zs(self):
        return np.linspace(*self.z_range, self.nz) if self.nz > 1 else np.array([self.z_range[0]])


def site_indices(lattice):
    # chain of M + 1 sites centred on n = 0, matching the lattice-sum range
    return np.arange(-lattice.half, lattice.half + 1)


def driven_dipole_moment(lattice, particle, k_parallel, omega, S=None):
    """Per-site dipole amplitudes (nm^3 per unit incident field)."""
    if S is None:
        S = lattice_sum_self(lattice, particle, k_parallel, omega)
    alpha = reduced_polarizability(particle, S, omega)
    n = site_indices(lattice)
    return alpha * np.exp(1j * k_parallel * n * lattice.spacing_a)


def total_field(points, lattice, particle, k_parallel, omega, dipoles=None, chunk=512):
    """Incident plus scattered field at points (..., 3), incident along +z polarized
    along the particle orientation with unit amplitude."""
    pts = np.asarray(points, dtype=float)
    shape = pts.shape[:-1]
    pts = pts.reshape(-1, 3)
    eps = np.asarray(particle.orientation)
    sites = lattice.positions(site_indices(lattice))
    if dipoles is None:
        dipoles = driven_dipole_moment(lattice, particle, k_parallel, omega)
    k = wavenumber(omega)
    out = np.empty((len(pts), 3), complex)
    for i in range(0, len(pts), chunk):
        p = pts[i:i + chunk]
        d = p[:, None, :] - sites[None, :, :]
        if np.any(np.linalg.norm(d, axis=-1) < COINCIDENT):
            raise PhysicsError("field point coincides with a particle")
        scat = np.einsum("psj,s->pj", greens_apply(d, omega, eps), dipoles)
        out[i:i + chunk] = eps[None, :] * np.exp(1j * k * (p @ Z_HAT))[:, None] + k**2 * scat
    return out.reshape(shape + (3,))


def intensity_map(grid, lattice, particle, k_parallel, omega, mask_radius=MASK_RADIUS):
    """|E|^2 on the xz-plane grid, shape (nz, nx); masked samples are NaN.

    Also returns the boolean mask.
    """
    X, Z = np.meshgrid(grid.xs, grid.zs)
    pts = np.stack([X, np.zeros_like(X), Z], axis=-1)
    sites = lattice.positions(site_indices(lattice))
    near = np.zeros(X.shape, bool)
    inside = (sites @ np.asarray(lattice.axis) >= grid.x_range[0] - mask_radius) & \
             (sites @ np.asarray(lattice.axis) <= grid.x_range[1] + mask_radius)
    for s in sites[inside]:
        near |= np.linalg.norm(pts - s, axis=-1) < mask_radius
    I = np.full(X.shape, np.nan)
    E = total_field(pts[~near], lattice, particle, k_parallel, omega)
    I[~near] = np.sum(np.abs(E) ** 2, axis=-1)
    return I, near


def on_axis_profile(xs, lattice, particle, k_parallel, omega, mask_radius=MASK_RADIUS):
    """Intensity along the chain axis (z = 0); samples within mask_radius of a site are NaN."""
    grid = FieldGrid((xs[0], xs[-1]), (0.0, 0.0), len(xs), 1)
    I, near = intensity_map(grid, lattice, particle, k_parallel, omega, mask_radius)
    return I[0], near[0]
