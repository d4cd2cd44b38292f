"""Experiment configuration: strict JSON parsing and model construction.

Unknown keys fail fast with their path so typos never silently fall back
to defaults.
"""

from __future__ import annotations

import json

import numpy as np

from .gridfn import DEFAULT_M, DEFAULT_X_MAX, DEFAULT_X_MIN, make_grid
from .kernels import AffineMap
from .models import (make_atomic_model, make_model_A, make_model_B,
                     make_model_C, make_multilinear)

_SCHEMA = {
    "model": {"type", "d", "e", "theta", "m", "g", "atoms", "mode",
              "a", "b", "c", "terms"},
    "grid": {"m", "x_min", "x_max"},
    "quad": {"nodes"},
    "spectral": {"p_min", "p_max", "steps"},
    "evolve": {"t_end", "dt", "snapshot_every", "u0"},
    "profile": {"p", "tol", "max_iter"},
    "moments": {"s_max", "p"},
    "reconstruct": {"input", "v_max", "v_points"},
    "output": {"dir"},
    "seed": None,
}


class ConfigError(ValueError):
    pass


def load_config(path) -> dict:
    with open(path) as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc}") from None
    validate_config(raw)
    return raw


def validate_config(cfg: dict) -> None:
    if not isinstance(cfg, dict):
        raise ConfigError("config root must be an object")
    for key, val in cfg.items():
        if key not in _SCHEMA:
            raise ConfigError(f"unknown config key: {key}")
        allowed = _SCHEMA[key]
        if allowed is None:
            continue
        if not isinstance(val, dict):
            raise ConfigError(f"config section {key} must be an object")
        for sub in val:
            if sub not in allowed:
                raise ConfigError(f"unknown config key: {key}.{sub}")


def _affine(spec, name) -> AffineMap:
    if isinstance(spec, (int, float)):
        return AffineMap(float(spec))
    if isinstance(spec, (list, tuple)) and len(spec) == 2:
        return AffineMap(float(spec[0]), float(spec[1]))
    raise ConfigError(f"model.{name} must be a number or [c0, c1]")


def _factor_spec(g):
    if g is None or g == "const":
        return "const"
    if isinstance(g, str):
        return np.loadtxt(g, delimiter=None)
    raise ConfigError("model.g must be 'const' or a table path")


def build_model(section: dict):
    """Construct a model from the `model` config section."""
    kind = section.get("type")
    if kind == "A":
        return make_model_A(d=int(section.get("d", 3)),
                            g=_factor_spec(section.get("g")))
    if kind == "B":
        return make_model_B(d=int(section.get("d", 3)),
                            g=_factor_spec(section.get("g")),
                            theta=float(section.get("theta", 1.0)),
                            m=float(section.get("m", 1.0)))
    if kind == "C":
        return make_model_C(d=int(section.get("d", 3)),
                            e=float(section.get("e", 1.0)))
    if kind == "atoms":
        atoms = [(float(s), float(w)) for s, w in section.get("atoms", [])]
        return make_atomic_model(
            atoms,
            a=_affine(section.get("a", 1.0), "a"),
            b=_affine(section.get("b", 1.0), "b"),
            c=_affine(section["c"], "c") if "c" in section else None,
            mode=section.get("mode", "laplace"),
        )
    if kind == "multilinear":
        entries = [(float(w), tuple(float(c) for c in coeffs))
                   for w, coeffs in section.get("terms", [])]
        return make_multilinear(entries)
    raise ConfigError(f"model.type must be one of A, B, C, atoms, "
                      f"multilinear (got {kind!r})")


def grid_from_config(cfg: dict) -> np.ndarray:
    g = cfg.get("grid", {})
    return make_grid(int(g.get("m", DEFAULT_M)),
                     float(g.get("x_min", DEFAULT_X_MIN)),
                     float(g.get("x_max", DEFAULT_X_MAX)))


def quad_nodes(cfg: dict) -> int:
    return int(cfg.get("quad", {}).get("nodes", 64))
