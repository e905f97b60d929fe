"""Optional PNG previews of a run (--plot). Data files remain the primary output."""
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.colors import LogNorm  # noqa: E402
import numpy as np  # noqa: E402


def _line_plot(path, t, ylabel):
    x = t.data["omega_eV"]
    fig, ax = plt.subplots(figsize=(6, 4))
    for c in t.columns:
        if c in ("omega_eV", "mask") or c.startswith("coherence"):
            continue
        ax.plot(x, t.data[c], label=c, lw=1)
    ax.set_xlabel("energy (eV)")
    ax.set_ylabel(ylabel)
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render(out_dir, cfg, out):
    paths = []
    kind = cfg["scenario"]
    for name, t in out.tables.items():
        path = os.path.join(out_dir, f"{name}.png")
        if t.layout == "matrix":
            fig, ax = plt.subplots(figsize=(6, 4))
            a = cfg["lattice"]["spacing_a"]
            ks = t.data["k_parallel"] * a / np.pi
            im = ax.pcolormesh(ks, t.data["omega"], t.data["values"].T, shading="auto")
            fig.colorbar(im, ax=ax, label="extinction (nm$^2$)")
            ax.set_xlabel("k$_\\parallel$ a / $\\pi$")
            ax.set_ylabel("energy (eV)")
        elif kind == "fieldmap" and name == "intensity":
            xs, zs = np.unique(t.data["x_nm"]), np.unique(t.data["z_nm"])
            I = t.data["intensity"].reshape(len(zs), len(xs))
            fig, ax = plt.subplots(figsize=(7, 3.5))
            im = ax.pcolormesh(xs, zs, np.ma.masked_invalid(I), shading="auto", norm=LogNorm())
            fig.colorbar(im, ax=ax, label="|E|$^2$")
            ax.set_xlabel("x (nm)")
            ax.set_ylabel("z (nm)")
            ax.set_aspect("equal")
        elif "x_nm" in t.data:
            fig, ax = plt.subplots(figsize=(6, 3))
            ax.plot(t.data["x_nm"], t.data["intensity"], lw=1)
            ax.set_xlabel("x (nm)")
            ax.set_ylabel("|E|$^2$ on axis")
        else:
            ylabel = "normalized extinction" if kind == "single-mode-om" else "extinction (nm$^2$)"
            if name == "population":
                ylabel = "population spectrum"
            _line_plot(path, t, ylabel)
            paths.append(path)
            continue
        fig.tight_layout()
        fig.savefig(path, dpi=120)
        plt.close(fig)
        paths.append(path)
    return paths
