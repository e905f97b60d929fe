import numpy as np
import pytest

from oracles import greens_components, project, ring_lattice_sum
from slrsim.constants import HBAR_C, PhysicsError, omega_from_wavelength
from slrsim.lattice import (CrossLatticeSpec, LatticeSpec, ParticleSpec, lattice_sum_cross,
                            lattice_sum_raman_self, lattice_sum_self)

FIG1 = ParticleSpec(omega_from_wavelength(500.0), 0.5)
rng = np.random.default_rng(3)


@pytest.mark.parametrize("M", [2, 4, 10])
def test_single_sum_matches_ring(M):
    lat = LatticeSpec(550.0, M)
    for _ in range(5):
        q, w = rng.uniform(-0.02, 0.02), rng.uniform(1.0, 3.0)
        ref = ring_lattice_sum(550.0, M, q, w, FIG1.omega0, FIG1.gamma0_rad)
        assert lattice_sum_self(lat, FIG1, q, w) == pytest.approx(ref, rel=1e-12)


def test_periodic_in_q():
    lat = LatticeSpec(550.0, 200)
    w = np.linspace(2.0, 2.5, 7)
    q = 0.003
    np.testing.assert_allclose(lattice_sum_self(lat, FIG1, q + 2 * np.pi / 550.0, w),
                               lattice_sum_self(lat, FIG1, q, w), rtol=1e-9)


def test_large_spacing_decay():
    # generic frequencies give roughly a/a' suppression; the 1e-3 factor needs the
    # resonantly enhanced near-RA sum on the a = 550 nm side
    w = np.linspace(1.5, 2.6, 12)
    near = np.abs(lattice_sum_self(LatticeSpec(550.0, 400), FIG1, 0.0, w))
    far = np.abs(lattice_sum_self(LatticeSpec(1e5, 400), FIG1, 0.0, w))
    assert np.all(far < 3e-2 * near)
    w = 2.25
    assert abs(lattice_sum_self(LatticeSpec(1e5, 400), FIG1, 0.0, w)) < \
        1e-3 * abs(lattice_sum_self(LatticeSpec(550.0, 400), FIG1, 0.0, w))


def test_converges_away_from_rayleigh_anomaly():
    ra = 2 * np.pi * HBAR_C / 550.0
    w = np.array([1.8, 2.0, ra + 0.25, 2.6])
    s8 = lattice_sum_self(LatticeSpec(550.0, 8000), FIG1, 0.0, w)
    s4 = lattice_sum_self(LatticeSpec(550.0, 4000), FIG1, 0.0, w)
    assert np.all(np.abs(s8 - s4) / np.abs(s8) < 1e-2)


def test_workers_do_not_change_bits():
    lat = LatticeSpec(550.0, 2000)
    w = np.linspace(2.0, 2.6, 700)
    a = lattice_sum_self(lat, FIG1, 0.001, w, workers=1)
    b = lattice_sum_self(lat, FIG1, 0.001, w, workers=3)
    assert a.tobytes() == b.tobytes()


def test_scalar_in_scalar_out():
    assert np.ndim(lattice_sum_self(LatticeSpec(550.0, 10), FIG1, 0.0, 2.0)) == 0


def test_cross_sum_brute_force():
    M, a, q, w = 6, 550.0, 0.002, 2.2
    rm = np.array([0.5 * a, 0.0, 0.0])
    v = np.array([0.0, 0.6, 0.8])
    cross = CrossLatticeSpec(tuple(rm), tuple(v), 0.3)
    u = np.array(FIG1.orientation)
    ref = 0j
    for n in range(-M // 2, M // 2 + 1):
        r = np.array([n * a, 0, 0]) + rm
        ref += project(greens_components(r, w), u, v) * np.exp(-1j * q * r[0])
    ref *= 3 * np.pi * FIG1.gamma0_rad * HBAR_C * w**2 / FIG1.omega0**3 * 0.3
    assert lattice_sum_cross(LatticeSpec(a, M), FIG1, cross, q, w) == pytest.approx(ref, rel=1e-12)


def test_cross_sum_rejects_zero_displacement():
    with pytest.raises(PhysicsError):
        lattice_sum_cross(LatticeSpec(550.0, 4), FIG1, CrossLatticeSpec((0.0, 0.0, 0.0)), 0.0, 2.0)


def test_raman_sum_is_scaled_self_sum():
    lat = LatticeSpec(550.0, 100)
    cross = CrossLatticeSpec((275.0, 0, 0), (0, 1.0, 0), 0.3)
    w = np.linspace(2.0, 2.5, 5)
    np.testing.assert_allclose(lattice_sum_raman_self(lat, cross, FIG1, 0.0, w),
                               0.09 * lattice_sum_self(lat, FIG1, 0.0, w), rtol=1e-12)


@pytest.mark.parametrize("kw", [dict(spacing_a=-1, site_count_M=4), dict(spacing_a=1, site_count_M=5),
                                dict(spacing_a=1, site_count_M=0), dict(spacing_a=1, site_count_M=4, axis=(1, 1, 0))])
def test_lattice_validation(kw):
    with pytest.raises(PhysicsError):
        LatticeSpec(**kw)


@pytest.mark.parametrize("kw", [dict(omega0=0, gamma0_rad=0.1), dict(omega0=1, gamma0_rad=0)])
def test_particle_validation(kw):
    with pytest.raises(PhysicsError):
        ParticleSpec(**kw)


def test_rejects_nonpositive_frequency():
    with pytest.raises(PhysicsError):
        lattice_sum_self(LatticeSpec(550.0, 4), FIG1, 0.0, [1.0, 0.0])
