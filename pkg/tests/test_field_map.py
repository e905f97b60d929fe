import numpy as np
import pytest

from slrsim.constants import HBAR_C, PhysicsError, omega_from_wavelength
from slrsim.field_map import FieldGrid, driven_dipole_moment, intensity_map, site_indices, total_field
from slrsim.greens import greens_projected
from slrsim.lattice import LatticeSpec, ParticleSpec

P = ParticleSpec(omega_from_wavelength(500.0), 0.5)
LAT = LatticeSpec(550.0, 40)


def test_normal_incidence_dipoles_equal():
    p = driven_dipole_moment(LAT, P, 0.0, 2.2)
    assert len(p) == LAT.site_count_M + 1
    np.testing.assert_array_equal(p, p[0])


def test_bare_resonant_dipole_is_imaginary():
    p = driven_dipole_moment(LAT, P, 0.003, P.omega0, S=0.0)
    n = site_indices(LAT)
    expected = 1j * 3 * np.pi * HBAR_C**3 * 2 / P.omega0**3 * np.exp(1j * 0.003 * n * 550.0)
    np.testing.assert_allclose(p, expected, rtol=1e-13)


def test_no_dipoles_leaves_incident_field():
    pts = np.array([[100.0, 0, 50.0], [-30.0, 0, 400.0]])
    E = total_field(pts, LAT, P, 0.0, 2.2, dipoles=np.zeros(LAT.site_count_M + 1))
    np.testing.assert_allclose(np.sum(np.abs(E) ** 2, axis=-1), 1.0, rtol=1e-15)


def test_far_field_returns_to_incident_intensity():
    lat = LatticeSpec(550.0, 1000)
    pts = np.array([[0.0, 0.0, 1e9], [1000.0, 0.0, -1e9]])
    I = np.sum(np.abs(total_field(pts, lat, P, 0.0, 2.2)) ** 2, axis=-1)
    np.testing.assert_allclose(I, 1.0, rtol=0.1)


def test_scattered_field_linear_in_drive():
    pts = np.array([[120.0, 0, 80.0], [300.0, 0, -200.0], [13.0, 0, 2.0]])
    p = driven_dipole_moment(LAT, P, 0.0, 2.2)
    inc = total_field(pts, LAT, P, 0.0, 2.2, dipoles=np.zeros_like(p))
    e1 = total_field(pts, LAT, P, 0.0, 2.2, dipoles=p) - inc
    e2 = total_field(pts, LAT, P, 0.0, 2.2, dipoles=2 * p) - inc
    np.testing.assert_allclose(e2, 2 * e1, rtol=1e-12)
    # doubling the whole drive (incident and dipoles) quadruples |E|^2
    np.testing.assert_allclose(np.abs(2 * inc + e2) ** 2, 4 * np.abs(inc + e1) ** 2, rtol=1e-12)


def test_reciprocity_of_kernel():
    d = np.array([[137.0, 0.0, -42.0]])
    u = np.array(P.orientation)
    assert greens_projected(d, 2.2, u, u) == pytest.approx(greens_projected(-d, 2.2, u, u), rel=1e-15)


def test_map_mirror_symmetric():
    grid = FieldGrid((-1100.0, 1100.0), (-300.0, 300.0), 41, 11)
    I, mask = intensity_map(grid, LAT, P, 0.0, 2.2)
    np.testing.assert_array_equal(mask, mask[:, ::-1])
    np.testing.assert_allclose(I, I[:, ::-1], rtol=1e-9, equal_nan=True)
    assert np.isnan(I[mask]).all() and not np.isnan(I[~mask]).any()
    assert I.shape == (11, 41)


def test_coincident_point_rejected():
    with pytest.raises(PhysicsError):
        total_field(np.array([[550.0, 0.0, 0.0]]), LAT, P, 0.0, 2.2)


def test_grid_validation():
    with pytest.raises(PhysicsError):
        FieldGrid((0.0, 1.0), (0.0, 1.0), 1, 5)
    with pytest.raises(PhysicsError):
        FieldGrid((1.0, 0.0), (0.0, 1.0), 5, 5)
