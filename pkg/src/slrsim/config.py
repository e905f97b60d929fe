"""Scenario configuration: strict schema, defaults and the bundled presets.

Config files are YAML (JSON is accepted too, so a run manifest can be fed
back in). Unknown keys are errors. See docs/config.md for the schema.
"""
import copy
import json
import re

import jsonschema
import yaml

class _Loader(yaml.SafeLoader):
    """SafeLoader that also reads exponent floats without a dot (1e-6) as numbers."""


_Loader.add_implicit_resolver(
    "tag:yaml.org,2002:float",
    re.compile(r"""^(?:[-+]?(?:[0-9][0-9_]*)\.[0-9_]*(?:[eE][-+]?[0-9]+)?
    |[-+]?(?:[0-9][0-9_]*)(?:[eE][-+]?[0-9]+)
    |\.[0-9_]+(?:[eE][-+]?[0-9]+)?
    |[-+]?\.(?:inf|Inf|INF)
    |\.(?:nan|NaN|NAN))$""", re.X),
    list("-+0123456789."))

KINDS = ("extinction", "dispersion", "fieldmap", "optomech", "single-mode-om", "exciton", "pump-probe")


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------- schema pieces

def _num(minimum=None, exclusive=False):
    s = {"type": "number"}
    if minimum is not None:
        s["exclusiveMinimum" if exclusive else "minimum"] = minimum
    return s


POS = _num(0, exclusive=True)
NONNEG = _num(0)
VEC3 = {"type": "array", "items": {"type": "number"}, "minItems": 3, "maxItems": 3}


def _obj(props, required=()):
    return {"type": "object", "properties": props, "required": list(required), "additionalProperties": False}


PARTICLE = _obj({"lambda0_nm": POS, "omega0": POS, "gamma0_rad": POS, "orientation": VEC3}, ["gamma0_rad"])
LATTICE = _obj({"spacing_a": POS, "site_count_M": {"type": "integer", "minimum": 2}, "axis": VEC3},
               ["spacing_a", "site_count_M"])
PIECEWISE = _obj({"lo": POS, "hi": POS, "fine": POS, "coarse": POS, "window": NONNEG}, ["lo", "hi"])
UNIFORM = _obj({"lo": POS, "hi": POS, "step": POS}, ["lo", "hi", "step"])
TRANSITION = _obj({"lower": {"type": "string"}, "upper": {"type": "string"}, "omega_t": POS,
                   "gamma_t_rad": NONNEG, "orientation": VEC3, "dipole_allowed": {"type": "boolean"}},
                  ["lower", "upper", "omega_t", "gamma_t_rad"])
POPULATIONS = {"type": "object", "additionalProperties": NONNEG, "minProperties": 1}
PULSE = _obj({"center_omega": POS, "fwhm_fs": POS, "amplitude": {"type": "number"}, "delay_fs": {"type": "number"}},
             ["center_omega", "fwhm_fs"])
BRANCHES = {"type": "array", "items": {"enum": ["red", "blue"]}, "minItems": 1, "uniqueItems": True}
COMMON = {"scenario": {"enum": list(KINDS)}, "workers": {"type": "integer", "minimum": 1},
          "out_dir": {"type": "string"}, "format": {"enum": ["csv", "json", "both"]}}

SCHEMAS = {
    "extinction": _obj({**COMMON, "particle": PARTICLE, "lattice": LATTICE, "k_parallel": {"type": "number"},
                        "grid": PIECEWISE}, ["scenario"]),
    "dispersion": _obj({**COMMON, "particle": PARTICLE, "lattice": LATTICE, "grid": UNIFORM,
                        "k_grid": _obj({"min_fraction": {"type": "number"}, "max_fraction": {"type": "number"},
                                        "count": {"type": "integer", "minimum": 1}},
                                       ["min_fraction", "max_fraction", "count"])}, ["scenario"]),
    "fieldmap": _obj({**COMMON, "particle": PARTICLE, "lattice": LATTICE, "k_parallel": {"type": "number"},
                      "omega": {"oneOf": [POS, {"enum": ["omega0", "slr"]}]},
                      "periods": {"type": "integer", "minimum": 1},
                      "nx": {"type": "integer", "minimum": 2}, "nz": {"type": "integer", "minimum": 1},
                      "z_half_extent_periods": POS, "mask_radius": NONNEG,
                      "slr_search": UNIFORM}, ["scenario"]),
    "optomech": _obj({**COMMON, "particle": PARTICLE, "lattice": LATTICE, "k_parallel": {"type": "number"},
                      "grid": PIECEWISE,
                      "om": _obj({"omega_vib": POS, "gamma_vib": NONNEG, "raman_ratio": NONNEG,
                                  "offset_fraction": {"type": "number"}, "raman_orientation": VEC3,
                                  "sideband_target": {"oneOf": [POS, {"enum": ["slr"]}]},
                                  "branches": BRANCHES}, ["omega_vib"])}, ["scenario"]),
    "single-mode-om": _obj({**COMMON, "particle": PARTICLE, "g": POS, "omega_vib": POS, "branches": BRANCHES,
                            "regimes": {"type": "array", "minItems": 1,
                                        "items": _obj({"gamma_vib": NONNEG, "gamma_p": NONNEG},
                                                      ["gamma_vib", "gamma_p"])},
                            "grid": UNIFORM}, ["scenario"]),
    "exciton": _obj({**COMMON, "lattice": LATTICE, "k_parallel": {"type": "number"},
                     "transitions": {"type": "array", "items": TRANSITION, "minItems": 1},
                     "cases": {"type": "object", "additionalProperties": POPULATIONS, "minProperties": 1},
                     "grid": PIECEWISE}, ["scenario"]),
    "pump-probe": _obj({**COMMON, "lattice": LATTICE, "k_parallel": {"type": "number"},
                        "pump_transition": TRANSITION, "probe_transition": TRANSITION, "p_inv0": _num(),
                        "pump": PULSE, "probe": PULSE,
                        "grid": _obj({"half_width": POS, "spacing": POS}, ["half_width", "spacing"]),
                        "eps_reg": POS, "im_mode": {"enum": ["time", "pointwise"]},
                        "convolution": {"enum": ["direct", "fft"]}, "floor": POS}, ["scenario"]),
}

# ---------------------------------------------------------------- defaults and presets

_FIG1_PARTICLE = {"lambda0_nm": 500.0, "gamma0_rad": 0.5, "orientation": [0.0, 1.0, 0.0]}
_FIG5_LATTICE = {"spacing_a": 415.0, "site_count_M": 1000, "axis": [1.0, 0.0, 0.0]}
_T12 = {"lower": "1", "upper": "2", "omega_t": 1.5, "gamma_t_rad": 0.25, "orientation": [0.0, 1.0, 0.0],
        "dipole_allowed": True}
_T23 = {"lower": "2", "upper": "3", "omega_t": 3.0, "gamma_t_rad": 0.25, "orientation": [0.0, 1.0, 0.0],
        "dipole_allowed": True}

DEFAULTS = {
    "extinction": {
        "particle": _FIG1_PARTICLE,
        "lattice": {"spacing_a": 550.0, "site_count_M": 8000, "axis": [1.0, 0.0, 0.0]},
        "k_parallel": 0.0,
        "grid": {"lo": 2.0, "hi": 2.6, "fine": 5e-4, "coarse": 5e-3, "window": 0.1},
    },
    "dispersion": {
        "particle": _FIG1_PARTICLE,
        "lattice": {"spacing_a": 550.0, "site_count_M": 8000, "axis": [1.0, 0.0, 0.0]},
        "k_grid": {"min_fraction": -0.8, "max_fraction": 0.8, "count": 33},
        "grid": {"lo": 1.6, "hi": 3.0, "step": 2e-3},
    },
    "fieldmap": {
        "particle": _FIG1_PARTICLE,
        "lattice": {"spacing_a": 550.0, "site_count_M": 1000, "axis": [1.0, 0.0, 0.0]},
        "k_parallel": 0.0, "omega": "slr", "periods": 10, "nx": 400, "nz": 200,
        "z_half_extent_periods": 2.5, "mask_radius": 10.0,
        "slr_search": {"lo": 2.15, "hi": 2.2542, "step": 5e-5},
    },
    "optomech": {
        "particle": _FIG1_PARTICLE,
        "lattice": {"spacing_a": 550.0, "site_count_M": 8000, "axis": [1.0, 0.0, 0.0]},
        "k_parallel": 0.0,
        "grid": {"lo": 2.0, "hi": 2.6, "fine": 5e-4, "coarse": 5e-3, "window": 0.1},
        "om": {"omega_vib": 0.2, "gamma_vib": 0.0, "raman_ratio": 0.3, "offset_fraction": 0.5,
               "raman_orientation": [0.0, 1.0, 0.0], "sideband_target": "slr", "branches": ["red", "blue"]},
    },
    "single-mode-om": {
        "particle": {"omega0": 1.0, "gamma0_rad": 0.1, "orientation": [0.0, 1.0, 0.0]},
        "g": 0.01, "omega_vib": 0.1, "branches": ["red", "blue"],
        "regimes": [{"gamma_vib": 0.01, "gamma_p": 0.001}, {"gamma_vib": 0.001, "gamma_p": 0.01}],
        "grid": {"lo": 0.8, "hi": 1.2, "step": 1e-4},
    },
    "exciton": {
        "lattice": _FIG5_LATTICE, "k_parallel": 0.0,
        "transitions": [_T12, _T23],
        "cases": {"ground": {"1": 1.0, "2": 0.0, "3": 0.0}, "pumped": {"1": 0.5, "2": 0.5, "3": 0.0}},
        "grid": {"lo": 1.0, "hi": 3.2, "fine": 5e-4, "coarse": 5e-3, "window": 0.1},
    },
    "pump-probe": {
        "lattice": _FIG5_LATTICE, "k_parallel": 0.0,
        "pump_transition": _T12, "probe_transition": _T23, "p_inv0": -1.0,
        "pump": {"center_omega": 1.5, "fwhm_fs": 40.0, "amplitude": 0.01, "delay_fs": 0.0},
        "probe": {"center_omega": 3.0, "fwhm_fs": 40.0, "amplitude": 0.01, "delay_fs": 50.0},
        "grid": {"half_width": 0.5, "spacing": 1e-4},
        "eps_reg": 1e-6, "im_mode": "time", "convolution": "direct", "floor": 1e-3,
    },
}

PRESETS = {
    "fig1b": {"scenario": "extinction"},
    "fig1b-map": {"scenario": "dispersion"},
    "fig2a": {"scenario": "fieldmap", "lattice": {"spacing_a": 300.0}, "omega": "omega0"},
    "fig2b": {"scenario": "fieldmap"},
    "fig3": {"scenario": "optomech"},
    "fig4": {"scenario": "single-mode-om"},
    "fig5": {"scenario": "exciton"},
    "fig6": {"scenario": "pump-probe"},
}

RUN_DEFAULTS = {"workers": 1, "format": "both"}


REPLACE_KEYS = {"cases"}


def deep_merge(base, over):
    out = copy.deepcopy(base)
    for k, v in over.items():
        if isinstance(v, dict) and isinstance(out.get(k), dict) and k not in REPLACE_KEYS:
            out[k] = deep_merge(out[k], v)
        else:
            out[k] = copy.deepcopy(v)
    return out


def _line_map(text):
    """Map key paths to 1-based source lines for diagnostics."""
    lines = {}
    try:
        root = yaml.compose(text, Loader=_Loader)
    except yaml.YAMLError:
        return lines

    def walk(node, path):
        if isinstance(node, yaml.MappingNode):
            for k, v in node.value:
                p = path + (k.value,)
                lines[p] = k.start_mark.line + 1
                walk(v, p)
        elif isinstance(node, yaml.SequenceNode):
            for i, v in enumerate(node.value):
                lines[path + (i,)] = v.start_mark.line + 1
                walk(v, path + (i,))
    if root is not None:
        walk(root, ())
    return lines


def _describe(err, lines):
    path = tuple(err.absolute_path)
    if err.validator == "additionalProperties":
        extra = sorted(set(err.instance) - set(err.schema.get("properties", {})))
        key = extra[0] if extra else "?"
        full = path + (key,)
        where = f" (line {lines[full]})" if full in lines else ""
        return f"unknown key '{'.'.join(map(str, full))}'{where}"
    if err.validator == "required":
        missing = [k for k in err.validator_value if k not in err.instance][0]
        full = ".".join(map(str, path + (missing,)))
        return f"missing required key '{full}'"
    where = f" (line {lines[path]})" if path in lines else ""
    return f"invalid value at '{'.'.join(map(str, path)) or '<root>'}'{where}: {err.message}"


def resolve(raw, lines=None):
    """Validate a raw mapping, then fill in defaults. Returns the resolved config dict."""
    lines = lines or {}
    if not isinstance(raw, dict):
        raise ConfigError("config must be a mapping")
    if "config" in raw and "tool" in raw:  # a run manifest
        raw = raw["config"]
    kind = raw.get("scenario")
    if kind is None:
        raise ConfigError("missing required key 'scenario'")
    if kind not in SCHEMAS:
        raise ConfigError(f"invalid value at 'scenario': {kind!r} is not one of {list(KINDS)}")
    schema = SCHEMAS[kind]
    # nested blocks may be partial overrides of the defaults, so "required" is checked after merging
    errors = sorted((e for e in jsonschema.Draft7Validator(schema).iter_errors(raw) if e.validator != "required"),
                    key=lambda e: [str(p) for p in e.absolute_path])
    if errors:
        raise ConfigError("; ".join(_describe(e, lines) for e in errors))
    cfg = deep_merge(deep_merge(RUN_DEFAULTS, DEFAULTS[kind]), raw)
    user_particle = raw.get("particle", {})
    if "particle" in cfg:
        given = [k for k in ("lambda0_nm", "omega0") if k in user_particle]
        if len(given) == 2:
            raise ConfigError("particle: give either 'lambda0_nm' or 'omega0', not both")
        if given:
            cfg["particle"].pop("omega0" if given[0] == "lambda0_nm" else "lambda0_nm", None)
    errors = list(jsonschema.Draft7Validator(schema).iter_errors(cfg))
    if errors:
        raise ConfigError("; ".join(_describe(e, lines) for e in errors))
    return cfg


def parse_config(source):
    """Parse YAML/JSON text or a path into a resolved config."""
    text = source
    if "\n" not in str(source) and not str(source).lstrip().startswith("{"):
        try:
            with open(source) as fh:
                text = fh.read()
        except FileNotFoundError as e:
            raise ConfigError(f"config file not found: {source}") from e
    try:
        raw = yaml.load(text, Loader=_Loader)
    except yaml.YAMLError as e:
        raise ConfigError(f"malformed config: {e}") from e
    return resolve(raw, _line_map(text))


def preset(name):
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}")
    return resolve(copy.deepcopy(PRESETS[name]))


def dumps(cfg):
    return json.dumps(cfg, indent=2, sort_keys=True)
