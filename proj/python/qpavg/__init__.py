"""Weighted Birkhoff averages for quasiperiodic orbits.

``run`` mirrors the command-line tool: ``run("rotnum", system="torus2d", n=10**6)``.
"""

import json

from ._core import (
    ConfigError,
    NumericalError,
    circle_rotation,
    commands,
    fourier_coeffs,
    lyapunov,
    rotation_number,
    standard_map_step,
    torus_step,
    version,
    weighted_average,
    weights,
)
from ._core import run_json as _run_json

__all__ = [
    "ConfigError",
    "NumericalError",
    "circle_rotation",
    "commands",
    "fourier_coeffs",
    "lyapunov",
    "rotation_number",
    "run",
    "standard_map_step",
    "torus_step",
    "version",
    "weighted_average",
    "weights",
]

_PARAMS = ("F", "mu", "H")


def run(command, system="", ic=None, **options):
    """Run a command and return a dict with columns, rows, scalars and config.

    Keyword options use the CLI flag names with underscores (n, kernel,
    precision, burn_in, kmax, jmax, points, n_grid, step, tol) plus the
    system parameters F, mu and H.
    """
    cfg = {"command": command, "system": system}
    if ic is not None:
        cfg["ic"] = [repr(float(v)) if not isinstance(v, str) else v for v in ic]
    params = {}
    for key in _PARAMS:
        if key in options:
            params[key] = str(options.pop(key))
    cfg["params"] = params
    for key in ("step", "tol"):
        if key in options:
            options[key] = str(options[key])
    cfg.update(options)
    out = _run_json(json.dumps(cfg))
    out["config"] = json.loads(out["config"])
    out["scalars"] = {k: _number(v) for k, v in out["scalars"].items()}
    return out


def _number(text):
    try:
        return float(text)
    except ValueError:
        return text
