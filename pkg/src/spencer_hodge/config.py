"""YAML configuration loading, overrides, and validation for the CLI.

A config is a nested mapping:

    algebra: so3                 # builtin name, or {file: constants.txt}
    mesh:
      resolutions: [16, 16]      # one entry for a circle, two for a torus
      sides: [6.2832, 6.2832]    # optional, defaults to 2 pi each
    fields:
      lambda: {name: constant, coeffs: [0, 0, 1]}
      omega: {name: zero}        # optional
    truncation: 0
    metrics: [A, B]              # or a single name
    alpha: 0.5                   # mixed-metric blend
    solver:
      n_eigs: 10
      dense_cutoff: 5000
      seed: 0
    fit:                         # optional fitting stage
      target: {name: constant, coeffs: [0, 0, 1]}
      alpha: 0.0
      max_iter: 5000
      tol: 1.0e-8
      seed: 0
      init_noise: 0.3

Overrides use dotted paths, e.g. --set mesh.resolutions=[32,32] or
--set solver.n_eigs=20; values are parsed as YAML scalars.
"""

from __future__ import annotations

import copy

import yaml

from .errors import ConfigError
from .lie import BUILTIN_NAMES, LieAlgebra, builtin_algebra, load_lie_algebra
from .symalg import DEFAULT_DEGREE_CAP

_TOP_KEYS = {"algebra", "mesh", "fields", "truncation", "metrics", "alpha",
             "solver", "fit"}
_MESH_KEYS = {"resolutions", "sides"}
_SOLVER_KEYS = {"n_eigs", "dense_cutoff", "seed"}
_FIT_KEYS = {"target", "alpha", "max_iter", "tol", "seed", "init_noise"}
_METRIC_NAMES = ("A", "A-enhanced", "A-enh", "B", "mixed", "plain")


def load_config(path: str) -> dict:
    """Parse a YAML config file into a mapping."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = yaml.safe_load(handle)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"config file {path} is not valid YAML: {exc}") from exc
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"config root must be a mapping, got {type(data).__name__}")
    return data


def apply_overrides(cfg: dict, pairs) -> dict:
    """Apply dotted-path overrides like mesh.resolutions=[8,8]."""
    out = copy.deepcopy(cfg)
    for pair in pairs or []:
        if "=" not in pair:
            raise ConfigError(f"override {pair!r} needs the form path=value")
        path, raw = pair.split("=", 1)
        keys = [k for k in path.strip().split(".") if k]
        if not keys:
            raise ConfigError(f"override {pair!r} has an empty path")
        try:
            value = yaml.safe_load(raw)
        except yaml.YAMLError as exc:
            raise ConfigError(f"override value {raw!r} is not valid YAML") from exc
        node = out
        for key in keys[:-1]:
            child = node.get(key)
            if child is None:
                child = {}
                node[key] = child
            if not isinstance(child, dict):
                raise ConfigError(
                    f"override {pair!r} descends into non-mapping key {key!r}"
                )
            node = child
        node[keys[-1]] = value
    return out


def _require_mapping(value, where: str) -> dict:
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise ConfigError(f"{where} must be a mapping")
    return value


def _check_keys(mapping: dict, allowed, where: str):
    unknown = set(mapping) - set(allowed)
    if unknown:
        raise ConfigError(
            f"unknown {where} key(s): {', '.join(sorted(map(str, unknown)))}"
        )


def _int_in(mapping: dict, key: str, default: int, low: int, high=None,
            where: str = "") -> int:
    value = mapping.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{where}{key} must be an integer")
    if value < low or (high is not None and value > high):
        bound = f">= {low}" if high is None else f"in {low}..{high}"
        raise ConfigError(f"{where}{key} must be {bound}, got {value}")
    return value


def _float_in(mapping: dict, key: str, default: float, low=None, high=None,
              where: str = "") -> float:
    value = mapping.get(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}{key} must be a number")
    value = float(value)
    if low is not None and value < low:
        raise ConfigError(f"{where}{key} must be >= {low}, got {value}")
    if high is not None and value > high:
        raise ConfigError(f"{where}{key} must be <= {high}, got {value}")
    return value


def normalize_config(cfg: dict) -> dict:
    """Validate a raw config and fill defaults.

    Returns a flat mapping ready to feed the pipeline: algebra,
    resolutions, sides, lambda_spec, omega_spec, truncation, metrics,
    alpha, n_eigs, dense_cutoff, seed, fit.
    """
    cfg = _require_mapping(cfg, "config")
    _check_keys(cfg, _TOP_KEYS, "config")

    algebra = cfg.get("algebra", "so3")
    if isinstance(algebra, str):
        if algebra not in BUILTIN_NAMES:
            raise ConfigError(
                f"algebra must be one of {sorted(BUILTIN_NAMES)} or a "
                f"{{file: path}} mapping, got {algebra!r}"
            )
    elif isinstance(algebra, dict):
        if set(algebra) != {"file"}:
            raise ConfigError("algebra mapping must have exactly the key 'file'")
    else:
        raise ConfigError("algebra must be a name or a {file: path} mapping")

    mesh = _require_mapping(cfg.get("mesh"), "mesh")
    _check_keys(mesh, _MESH_KEYS, "mesh")
    resolutions = mesh.get("resolutions", [16, 16])
    if not isinstance(resolutions, list) or not 1 <= len(resolutions) <= 2:
        raise ConfigError("mesh.resolutions must be a list of one or two entries")
    for n in resolutions:
        if isinstance(n, bool) or not isinstance(n, int) or n < 3:
            raise ConfigError(
                f"mesh.resolutions entries must be integers >= 3, got {n!r}"
            )
    sides = mesh.get("sides")
    if sides is not None:
        if (not isinstance(sides, list) or len(sides) != len(resolutions)):
            raise ConfigError("mesh.sides must match mesh.resolutions in length")
        for s in sides:
            if not isinstance(s, (int, float)) or isinstance(s, bool) or s <= 0:
                raise ConfigError("mesh.sides entries must be positive numbers")
        sides = [float(s) for s in sides]

    fields = _require_mapping(cfg.get("fields"), "fields")
    _check_keys(fields, {"lambda", "omega"}, "fields")
    lambda_spec = fields.get("lambda")
    if not isinstance(lambda_spec, dict):
        raise ConfigError("fields.lambda is required and must be a mapping")
    omega_spec = fields.get("omega")
    if omega_spec is not None and not isinstance(omega_spec, dict):
        raise ConfigError("fields.omega must be a mapping when present")

    truncation = _int_in(cfg, "truncation", 0, 0, DEFAULT_DEGREE_CAP)

    metrics = cfg.get("metrics", ["A", "B"])
    if isinstance(metrics, str):
        metrics = [metrics]
    if not isinstance(metrics, list) or not metrics:
        raise ConfigError("metrics must be a name or a non-empty list of names")
    for m in metrics:
        if m not in _METRIC_NAMES:
            raise ConfigError(
                f"metrics entries must be from {_METRIC_NAMES}, got {m!r}"
            )

    alpha = _float_in(cfg, "alpha", 0.5, 0.0, 1.0)

    solver = _require_mapping(cfg.get("solver"), "solver")
    _check_keys(solver, _SOLVER_KEYS, "solver")
    n_eigs = _int_in(solver, "n_eigs", 10, 1, where="solver.")
    dense_cutoff = _int_in(solver, "dense_cutoff", 5000, 1, where="solver.")
    seed = _int_in(solver, "seed", 0, -(2**31), 2**31, where="solver.")

    fit = cfg.get("fit")
    if fit is not None:
        fit = _require_mapping(fit, "fit")
        _check_keys(fit, _FIT_KEYS, "fit")
        target = fit.get("target")
        if not isinstance(target, dict):
            raise ConfigError("fit.target is required and must be a mapping")
        fit = {
            "target": target,
            "alpha": _float_in(fit, "alpha", 0.0, 0.0, where="fit."),
            "max_iter": _int_in(fit, "max_iter", 5000, 1, where="fit."),
            "tol": _float_in(fit, "tol", 1e-8, 0.0, where="fit."),
            "seed": _int_in(fit, "seed", 0, -(2**31), 2**31, where="fit."),
            "init_noise": _float_in(fit, "init_noise", 0.3, 0.0, where="fit."),
        }

    return {
        "algebra": algebra,
        "resolutions": list(resolutions),
        "sides": sides,
        "lambda_spec": lambda_spec,
        "omega_spec": omega_spec,
        "truncation": truncation,
        "metrics": list(metrics),
        "alpha": alpha,
        "n_eigs": n_eigs,
        "dense_cutoff": dense_cutoff,
        "seed": seed,
        "fit": fit,
    }


def build_algebra(spec) -> LieAlgebra:
    """Materialize the algebra named by a normalized config entry."""
    if isinstance(spec, str):
        return builtin_algebra(spec)
    return load_lie_algebra(spec["file"])
