"""Write run outputs: CSV tables, JSON bundle and the run manifest."""
import csv
import json
import math
import os
import shutil

import numpy as np

from .constants import HBAR, HBAR_C


def fmt(x):
    """Shortest round-trip representation; non-finite values become empty cells."""
    x = float(x)
    return repr(x) if math.isfinite(x) else ""


def _cell(v):
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return fmt(v)


def write_csv(path, table):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if table.layout == "matrix":
            w.writerow(["k_parallel\\omega"] + [fmt(x) for x in table.data["omega"]])
            for k, row in zip(table.data["k_parallel"], table.data["values"]):
                w.writerow([fmt(k)] + [fmt(x) for x in row])
            return
        cols = [np.asarray(table.data[c]) for c in table.columns]
        w.writerow(table.columns)
        for row in zip(*cols):
            w.writerow([_cell(v) for v in row])


def jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj) if math.isfinite(obj) else None
    return obj


def manifest(cfg, out, version):
    # the output location is not part of the computation, so it stays out of the manifest
    cfg = {k: v for k, v in cfg.items() if k != "out_dir"}
    return {"tool": "slrsim", "version": version, "config": cfg, "grid_hashes": out.grid_hashes(),
            "constants": {"hbar_c_eV_nm": HBAR_C, "hbar_eV_fs": HBAR},
            "derived": jsonable(out.derived), "warnings": list(out.warnings)}


def write_bundle(out_dir, cfg, out, version, fmt_="both", plot=False):
    """Write everything into out_dir; on any failure, files created here are removed."""
    created_dir = not os.path.exists(out_dir)
    written = []
    try:
        os.makedirs(out_dir, exist_ok=True)
        man = manifest(cfg, out, version)
        if fmt_ in ("csv", "both"):
            for name, t in out.tables.items():
                p = os.path.join(out_dir, f"{name}.csv")
                written.append(p)
                write_csv(p, t)
        if fmt_ in ("json", "both"):
            p = os.path.join(out_dir, "results.json")
            written.append(p)
            with open(p, "w") as fh:
                json.dump(jsonable({"tables": {n: t.data for n, t in out.tables.items()}, "manifest": man}), fh, sort_keys=True)
        p = os.path.join(out_dir, "manifest.json")
        written.append(p)
        with open(p, "w") as fh:
            json.dump(jsonable(man), fh, indent=2, sort_keys=True)
        if plot:
            from .plotting import render
            written += render(out_dir, cfg, out)
    except BaseException:
        if created_dir:
            shutil.rmtree(out_dir, ignore_errors=True)
        else:
            for p in written:
                if os.path.exists(p):
                    os.remove(p)
        raise
    return written
