"""Turn a resolved config into physics calls and named output tables."""
import hashlib
import warnings
from dataclasses import dataclass, field

import numpy as np

from .constants import omega_from_wavelength
from .exciton import PopulationState, TransitionSpec, exciton_extinction_spectrum
from .field_map import FieldGrid, driven_dipole_moment, intensity_map, on_axis_profile
from .lattice import LatticeSpec, ParticleSpec
from .linear_response import dispersion_map, extinction_spectrum
from .optomechanics import (OMParams, gamma_p, molecular_effective_width, om_extinction_spectrum,
                            single_mode_om_spectrum)
from .pump_probe import PulseSpec, run_pump_probe
from .spectra import peak_and_fwhm, piecewise_grid, ra_energies


@dataclass
class Table:
    columns: list
    data: dict
    layout: str = "rows"  # or "matrix": data = {"k_parallel": ..., "omega": ..., "values": 2D}
    coords: tuple = ()


@dataclass
class RunOutput:
    tables: dict
    derived: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    def grid_hashes(self):
        out = {}
        for name, t in self.tables.items():
            for c in t.coords:
                arr = np.ascontiguousarray(np.asarray(t.data[c], dtype=float))
                out[f"{name}.{c}"] = hashlib.sha256(arr.tobytes()).hexdigest()
        return out


def make_particle(p):
    omega0 = p["omega0"] if "omega0" in p else omega_from_wavelength(p["lambda0_nm"])
    return ParticleSpec(omega0, p["gamma0_rad"], tuple(p["orientation"]))


def make_lattice(l):
    return LatticeSpec(l["spacing_a"], l["site_count_M"], tuple(l["axis"]))


def make_transition(t):
    return TransitionSpec(t["lower"], t["upper"], t["omega_t"], t["gamma_t_rad"], tuple(t["orientation"]),
                          t["dipole_allowed"])


def _piecewise(g, anchors):
    return piecewise_grid(g["lo"], g["hi"], anchors, g["fine"], g["coarse"], g["window"])


def _uniform(g):
    n = int(round((g["hi"] - g["lo"]) / g["step"]))
    return g["lo"] + g["step"] * np.arange(n + 1)


def find_slr(lattice, particle, k_parallel, lo, hi, step, workers=1):
    """Frequency of maximum extinction in [lo, hi]."""
    w = lo + step * np.arange(int(round((hi - lo) / step)) + 1)
    ext = extinction_spectrum(lattice, particle, k_parallel, w, workers).values
    return float(w[np.argmax(ext)])


def run_extinction(cfg):
    particle, lattice, k = make_particle(cfg["particle"]), make_lattice(cfg["lattice"]), cfg["k_parallel"]
    ras = ra_energies(lattice.spacing_a, k)
    w = _piecewise(cfg["grid"], ras)
    res = extinction_spectrum(lattice, particle, k, w, cfg["workers"])
    wp, peak, fwhm = peak_and_fwhm(w, res.values)
    return RunOutput({"spectrum": Table(["omega_eV", "extinction_nm2"], {"omega_eV": w, "extinction_nm2": res.values},
                                        coords=("omega_eV",))},
                     {"omega0_eV": particle.omega0, "rayleigh_anomalies_eV": ras, "peak_eV": wp,
                      "peak_extinction_nm2": peak, "fwhm_eV": fwhm})


def run_dispersion(cfg):
    particle, lattice = make_particle(cfg["particle"]), make_lattice(cfg["lattice"])
    kg = cfg["k_grid"]
    ks = np.linspace(kg["min_fraction"], kg["max_fraction"], kg["count"]) * np.pi / lattice.spacing_a
    w = _uniform(cfg["grid"])
    res = dispersion_map(lattice, particle, ks, w, cfg["workers"])
    return RunOutput({"map": Table([], {"k_parallel": ks, "omega": w, "values": res.values}, layout="matrix",
                                   coords=("k_parallel", "omega"))},
                     {"omega0_eV": particle.omega0})


def run_fieldmap(cfg):
    particle, lattice, k = make_particle(cfg["particle"]), make_lattice(cfg["lattice"]), cfg["k_parallel"]
    a = lattice.spacing_a
    omega = cfg["omega"]
    if omega == "omega0":
        omega = particle.omega0
    elif omega == "slr":
        s = cfg["slr_search"]
        omega = find_slr(lattice, particle, k, s["lo"], s["hi"], s["step"], cfg["workers"])
    half = cfg["periods"] / 2 * a
    zh = cfg["z_half_extent_periods"] * a
    grid = FieldGrid((-half, half), (-zh, zh), cfg["nx"], cfg["nz"])
    I, mask = intensity_map(grid, lattice, particle, k, omega, cfg["mask_radius"])
    X, Z = np.meshgrid(grid.xs, grid.zs)
    line, lmask = on_axis_profile(grid.xs, lattice, particle, k, omega, cfg["mask_radius"])
    p0 = driven_dipole_moment(lattice, particle, k, omega)[lattice.half]
    return RunOutput(
        {"intensity": Table(["x_nm", "z_nm", "intensity", "mask"],
                            {"x_nm": X.ravel(), "z_nm": Z.ravel(), "intensity": I.ravel(),
                             "mask": mask.ravel().astype(int)}, coords=("x_nm", "z_nm")),
         "on_axis": Table(["x_nm", "intensity", "mask"], {"x_nm": grid.xs, "intensity": line,
                                                          "mask": lmask.astype(int)}, coords=("x_nm",))},
        {"omega_eV": float(omega), "omega0_eV": particle.omega0, "dipole_center_re": float(p0.real),
         "dipole_center_im": float(p0.imag)})


def run_optomech(cfg):
    particle, lattice, k = make_particle(cfg["particle"]), make_lattice(cfg["lattice"]), cfg["k_parallel"]
    om = cfg["om"]
    ras = ra_energies(lattice.spacing_a, k)
    w = _piecewise(cfg["grid"], ras)
    bare = extinction_spectrum(lattice, particle, k, w, cfg["workers"]).values
    target = om["sideband_target"]
    if target == "slr":
        target = float(w[np.argmax(bare)])
    cols = {"omega_eV": w, "bare": bare}
    derived = {"omega0_eV": particle.omega0, "sideband_target_eV": target}
    warn = []
    rm = tuple(om["offset_fraction"] * lattice.spacing_a * np.asarray(lattice.axis))
    for br in om["branches"]:
        s = 1 if br == "red" else -1
        params = OMParams(om["omega_vib"], target - s * om["omega_vib"], br, om["gamma_vib"], om["raman_ratio"],
                          rm, tuple(om["raman_orientation"]))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            res = om_extinction_spectrum(lattice, particle, params, k, w, cfg["workers"])
        cols[br] = res.values
        gp = gamma_p(params, particle)
        derived[f"{br}_omega_laser_eV"] = params.omega_laser
        derived[f"{br}_gamma_p_eV"] = gp
        derived[f"{br}_molecular_width_eV"] = molecular_effective_width(params, gp)
        if "warning" in res.metadata:
            warn.append(f"{br}: {res.metadata['warning']}")
    return RunOutput({"spectrum": Table(list(cols), cols, coords=("omega_eV",))}, derived, warn)


def run_single_mode(cfg):
    particle = make_particle(cfg["particle"])
    w = _uniform(cfg["grid"])
    cols = {"omega_eV": w}
    derived = {"omega0_eV": particle.omega0}
    for i, reg in enumerate(cfg["regimes"]):
        for br in cfg["branches"]:
            s = 1 if br == "red" else -1
            params = OMParams(cfg["omega_vib"], particle.omega0 - s * cfg["omega_vib"], br, reg["gamma_vib"])
            cav, mol = single_mode_om_spectrum(cfg["g"], particle, params, w, gp=reg["gamma_p"])
            cols[f"cavity_r{i}_{br}"] = cav
            cols[f"molecular_r{i}_{br}"] = mol
            derived[f"r{i}_{br}_molecular_width_eV"] = molecular_effective_width(params, reg["gamma_p"])
    return RunOutput({"spectrum": Table(list(cols), cols, coords=("omega_eV",))}, derived)


def run_exciton(cfg):
    lattice, k = make_lattice(cfg["lattice"]), cfg["k_parallel"]
    ts = [make_transition(t) for t in cfg["transitions"]]
    ras = [e for e in ra_energies(lattice.spacing_a, k, orders=(1, 2))]
    w = _piecewise(cfg["grid"], ras)
    cols = {"omega_eV": w}
    warn = []
    for name in sorted(cfg["cases"]):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            res = exciton_extinction_spectrum(lattice, ts, PopulationState(cfg["cases"][name]), k, w,
                                              cfg["workers"])
        cols[name] = res.values
        if "warning" in res.metadata and res.metadata["warning"] not in warn:
            warn.append(res.metadata["warning"])
    return RunOutput({"spectrum": Table(list(cols), cols, coords=("omega_eV",))},
                     {"rayleigh_anomalies_eV": ras}, warn)


def _pulse(p):
    return PulseSpec.from_fwhm(p["center_omega"], p["fwhm_fs"], p["amplitude"], p["delay_fs"])


def run_pump_probe_cfg(cfg):
    lattice, k = make_lattice(cfg["lattice"]), cfg["k_parallel"]
    t12, t23 = make_transition(cfg["pump_transition"]), make_transition(cfg["probe_transition"])
    pump, probe = _pulse(cfg["pump"]), _pulse(cfg["probe"])
    g = cfg["grid"]
    r = run_pump_probe(lattice, t12, t23, pump, probe, k, cfg["p_inv0"], g["half_width"], g["spacing"],
                       cfg["eps_reg"], cfg["convolution"], cfg["im_mode"], cfg["floor"])

    def band(grid, ext, sig):
        m = np.isnan(ext)
        return Table(["omega_eV", "extinction_nm2", "coherence_re", "coherence_im", "mask"],
                     {"omega_eV": grid.omegas, "extinction_nm2": ext, "coherence_re": sig.real,
                      "coherence_im": sig.imag, "mask": m.astype(int)}, coords=("omega_eV",))
    pop = Table(["omega_eV", "population_re", "population_im"],
                {"omega_eV": r.pop_grid.omegas, "population_re": r.population.real,
                 "population_im": r.population.imag}, coords=("omega_eV",))
    return RunOutput({"pump_band": band(r.coh_grid, r.pump_band, r.first),
                      "probe_band": band(r.probe_grid, r.probe_band, r.third),
                      "population": pop},
                     {"pump_sigma_fs": pump.temporal_width, "probe_sigma_fs": probe.temporal_width})


RUNNERS = {
    "extinction": run_extinction,
    "dispersion": run_dispersion,
    "fieldmap": run_fieldmap,
    "optomech": run_optomech,
    "single-mode-om": run_single_mode,
    "exciton": run_exciton,
    "pump-probe": run_pump_probe_cfg,
}


def run_scenario(cfg):
    return RUNNERS[cfg["scenario"]](cfg)
