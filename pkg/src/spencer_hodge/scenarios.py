"""Named ready-to-run configurations for the CLI and the demos."""

from __future__ import annotations

import copy

from .errors import ConfigError

SCENARIOS = {
    "torus-fluid": {
        "description": (
            "Rotation-algebra constraints on a 16x16 torus with a "
            "sinusoidal vortex covector; compares both weighted metrics "
            "at truncation 0."
        ),
        "config": {
            "algebra": "so3",
            "mesh": {"resolutions": [16, 16]},
            "fields": {
                "lambda": {
                    "name": "vortex-sin",
                    "direction": [1.0, 0.0, 0.0],
                    "offset": 1.0,
                    "amp": 0.5,
                    "axis": 0,
                },
            },
            "truncation": 0,
            "metrics": ["A", "B"],
        },
    },
    "su2-flat": {
        "description": (
            "Special-unitary constraints with a constant covector and a "
            "flat connection on an 8x8 torus; one fiber degree, so the "
            "harmonic dimensions factor through the base topology."
        ),
        "config": {
            "algebra": "su2",
            "mesh": {"resolutions": [8, 8]},
            "fields": {
                "lambda": {"name": "constant", "coeffs": [0.0, 0.0, 1.0]},
            },
            "truncation": 1,
            "metrics": ["A"],
        },
    },
    "su2-curved": {
        "description": (
            "Special-unitary pair with a constant curvature-bearing "
            "connection (components along the first two generators); the "
            "curvature weight is constant at 33."
        ),
        "config": {
            "algebra": "su2",
            "mesh": {"resolutions": [8, 8]},
            "fields": {
                "lambda": {"name": "constant", "coeffs": [0.0, 0.0, 1.0]},
                "omega": {
                    "name": "constant",
                    "coeffs": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
                },
            },
            "truncation": 0,
            "metrics": ["A", "B"],
        },
    },
    "fit-demo": {
        "description": (
            "Gradient-descent recovery of a compatible covector on a "
            "16-point circle with a flat connection, anchored to a "
            "constant target."
        ),
        "config": {
            "algebra": "so3",
            "mesh": {"resolutions": [16]},
            "fields": {
                "lambda": {"name": "constant", "coeffs": [0.0, 0.0, 1.0]},
            },
            "truncation": 0,
            "metrics": ["A"],
            "fit": {
                "target": {"name": "constant", "coeffs": [0.0, 0.0, 1.0]},
                "alpha": 0.0,
                "max_iter": 5000,
                "tol": 1.0e-8,
                "seed": 0,
                "init_noise": 0.3,
            },
        },
    },
}


def scenario_names() -> list:
    return sorted(SCENARIOS)


def scenario_config(name: str) -> dict:
    """Deep copy of a named scenario's config."""
    if name not in SCENARIOS:
        raise ConfigError(
            f"unknown scenario {name!r}; available: {', '.join(scenario_names())}"
        )
    return copy.deepcopy(SCENARIOS[name]["config"])


def scenario_description(name: str) -> str:
    if name not in SCENARIOS:
        raise ConfigError(f"unknown scenario {name!r}")
    return SCENARIOS[name]["description"]
