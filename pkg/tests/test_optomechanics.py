import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slrsim.constants import PhysicsError, omega_from_wavelength
from slrsim.lattice import LatticeSpec, ParticleSpec
from slrsim.linear_response import extinction_spectrum
from slrsim.optomechanics import (BLUE, RED, OMParams, gamma_p, molecular_effective_width, om_extinction_spectrum,
                                  om_self_energy, rwa_warning, single_mode_om_spectrum)

P = ParticleSpec(omega_from_wavelength(500.0), 0.5)
LAT = LatticeSpec(550.0, 400)
W = np.linspace(2.0, 2.6, 241)


def params(branch=RED, gamma_vib=0.0, ratio=0.3, target=2.23):
    s = 1 if branch == RED else -1
    return OMParams(0.2, target - s * 0.2, branch, gamma_vib, ratio, (275.0, 0.0, 0.0))


@settings(max_examples=50)
@given(st.floats(0, 1), st.floats(0, 1))
def test_branch_width_convention(gv, gp):
    red = OMParams(0.1, 1.0, RED, gv)
    blue = OMParams(0.1, 1.0, BLUE, gv)
    assert molecular_effective_width(red, gp) == gv + gp
    assert molecular_effective_width(blue, gp) == gv - gp
    assert molecular_effective_width(red, gp) >= gv >= molecular_effective_width(blue, gp)


def test_blue_stability_boundary():
    gv = 0.01
    blue = OMParams(0.1, 1.0, BLUE, gv)
    assert molecular_effective_width(blue, 0.999 * gv) > 0
    assert molecular_effective_width(blue, gv) == 0
    assert molecular_effective_width(blue, 1.001 * gv) < 0


def test_self_energy_quadratic_in_coupling():
    p = params()
    S_om = np.array([0.01 + 0.02j, -0.03j])
    S_p = np.array([0.001, 0.002j])
    w = np.array([2.1, 2.3])
    np.testing.assert_allclose(om_self_energy(3 * S_om, S_p, p, w, 0.01), 9 * om_self_energy(S_om, S_p, p, w, 0.01),
                               rtol=1e-14)


def test_singular_samples_are_nan():
    p = OMParams(0.1, 1.0, BLUE, 0.01)
    out = om_self_energy(np.array([0.1, 0.1]), 0.0, p, np.array([p.sideband, 0.5]), 0.01)
    assert np.isnan(out[0]) and np.isfinite(out[1])


def test_large_vibrational_damping_recovers_bare_spectrum():
    bare = extinction_spectrum(LAT, P, 0.0, W).values
    for br in (RED, BLUE):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            om = om_extinction_spectrum(LAT, P, params(br, gamma_vib=1e3), 0.0, W).values
        assert np.abs(om - bare).max() < 1e-3 * bare.max()


def test_zero_raman_ratio_is_bare():
    bare = extinction_spectrum(LAT, P, 0.0, W).values
    np.testing.assert_allclose(om_extinction_spectrum(LAT, P, params(ratio=0.0), 0.0, W).values, bare, rtol=1e-14)


def test_gamma_p_formula():
    p = params()
    assert gamma_p(p, P) == pytest.approx(0.5 * 0.09 * (p.sideband / P.omega0) ** 3)


def test_rwa_warning_only_on_blue_near_plasmon():
    assert rwa_warning(params(RED), P) is None
    assert "anti-Stokes" in rwa_warning(params(BLUE), P)
    far = OMParams(0.2, 0.5, BLUE)
    assert rwa_warning(far, P) is None
    with pytest.warns(UserWarning):
        res = om_extinction_spectrum(LAT, P, params(BLUE), 0.0, W)
    assert "warning" in res.metadata


@pytest.mark.parametrize("kw", [dict(omega_vib=0, omega_laser=1), dict(omega_vib=0.1, omega_laser=1, branch="green"),
                                dict(omega_vib=0.1, omega_laser=1, gamma_vib=-1)])
def test_params_validation(kw):
    with pytest.raises(PhysicsError):
        OMParams(**kw)


def test_single_mode_uncoupled_is_one():
    p0 = ParticleSpec(1.0, 0.1)
    w = np.linspace(0.8, 1.2, 101)
    for br in (RED, BLUE):
        s = 1 if br == RED else -1
        cav, mol = single_mode_om_spectrum(1e-9, p0, OMParams(0.1, 1.0 - s * 0.1, br, 0.01), w, gp=0.001)
        np.testing.assert_allclose(cav, 1.0, atol=1e-12)
        np.testing.assert_allclose(mol, 1.0, atol=1e-9)
