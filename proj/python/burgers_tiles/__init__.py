"""Tile-by-tile solver for the inviscid Burgers equation."""

import json as _json

from ._core import (
    BUMP_SLOPE_MAX,
    ConfigError,
    InitialData,
    PastShock,
    SolverError,
    TileSpec,
    advance,
    bump,
    bump_profile,
    epsilon_for_cell,
    eval_exact,
    l2_norm,
    max_admissible_amplitude,
    operator_checks,
    residual,
    shock_time,
    solve_tile,
    validate,
)
from ._core import run as _run

__all__ = [
    "BUMP_SLOPE_MAX",
    "ConfigError",
    "InitialData",
    "PastShock",
    "SolverError",
    "TileSpec",
    "advance",
    "bump",
    "bump_profile",
    "epsilon_for_cell",
    "eval_exact",
    "l2_norm",
    "max_admissible_amplitude",
    "operator_checks",
    "residual",
    "run",
    "shock_time",
    "solve_tile",
    "validate",
]


def run(command, config, out_dir=""):
    """Runs a CLI subcommand in-process; returns (exit_code, log)."""
    if not isinstance(config, str):
        config = _json.dumps(config)
    return _run(command, config, str(out_dir))
