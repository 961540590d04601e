"""Python access to the isav gradient-flow solver.

Configs are the JSON documents accepted by the ``isav`` command-line tool,
given here either as text or as a dict.
"""

import json

from ._isav import (
    NonPositiveEnergy,
    SchemeError,
    ValidationError,
    potential,
    presets,
)
from . import _isav

__all__ = [
    "NonPositiveEnergy",
    "SchemeError",
    "ValidationError",
    "converge",
    "potential",
    "presets",
    "resolve_config",
    "run",
]


def _text(config):
    return config if isinstance(config, str) else json.dumps(config)


def resolve_config(config):
    """Config with the preset and defaults expanded, as a dict."""
    return json.loads(_isav.resolve_config(_text(config)))


def run(config, write_files=False):
    """Run to t_end. Returns a dict with ``records`` (one dict per kept
    level), the final field ``phi`` as an (nx, ny) array and its ``r``."""
    return _isav.run(_text(config), write_files)


def converge(config, taus=(), grids=(), ref_tau=1e-5, ref_grid=64):
    """Temporal study when ``taus`` is given, spatial when ``grids`` is."""
    return _isav.converge(_text(config), list(taus), list(grids), ref_tau, ref_grid)
