# SPDX-License-Identifier: Apache-2.0
"""Python bindings for the corridor BS/beam association library.

Scenario configs cross the boundary as JSON; the helpers below accept and
return plain dicts.
"""

import json

from ._core import (
    AnnealerConfig,
    AntennaConfig,
    BaseStationSite,
    ConfigError,
    DimensionError,
    Error,
    GeometryError,
    InfeasibleError,
    LoadError,
    LinkGeometry,
    Position3D,
    allocate_random,
    array_gain,
    element_gain,
    free_space_path_gain,
    generate_corridor,
    link_geometry,
    optimize_scan_angle,
    solve_assignment,
    solve_min_cost_assignment,
    total_gain,
    umi_path_loss_db,
    wrap_angle,
)
from . import _core

__all__ = [
    "AnnealerConfig",
    "AntennaConfig",
    "BaseStationSite",
    "ConfigError",
    "DimensionError",
    "Error",
    "GeometryError",
    "InfeasibleError",
    "LoadError",
    "LinkGeometry",
    "Position3D",
    "allocate_random",
    "array_gain",
    "config_digest",
    "default_config",
    "element_gain",
    "free_space_path_gain",
    "generate_corridor",
    "link_geometry",
    "optimize_scan_angle",
    "run_scenario",
    "solve_assignment",
    "solve_min_cost_assignment",
    "sweep",
    "total_gain",
    "umi_path_loss_db",
    "validate_config",
    "wrap_angle",
]


def _dump(config):
    if config is None:
        return ""
    return config if isinstance(config, str) else json.dumps(config)


def default_config():
    return json.loads(_core.default_config_json())


def validate_config(config):
    """Raises ConfigError listing every problem."""
    _core.validate_config_json(_dump(config))


def config_digest(config=None):
    return _core.config_digest_json(_dump(config))


def run_scenario(config=None, threads=1):
    """Runs one scenario; returns the parsed results document."""
    return json.loads(_core.run_scenario_json(_dump(config), threads))


def sweep(config, axis, values, threads=1):
    return json.loads(_core.sweep_json(_dump(config), axis, [float(v) for v in values], threads))
