"""Energy-time speed limits for driven quantum systems."""

import json
import os

from ._core import (
    QslError,
    __version__,
    bures_increment,
    bures_length,
    check_trig_bound,
    energy_variance,
    evolve,
    fidelity,
    fisher_demo,
    mean_energy,
    qsl_time,
    tau_ml_linear,
    tau_ml_quadratic,
    tau_mt,
    wootters_angle,
)
from ._core import _run_config_json


def run(config, tol=1e-6):
    """Run a protocol config (dict or path to a JSON file) and return the report.

    The report has the same layout as the JSON written by ``qsl run``, with
    wall_ms fixed at 0.
    """
    if isinstance(config, (str, os.PathLike)):
        with open(config) as fh:
            text = fh.read()
        base = os.path.dirname(os.path.abspath(config))
    else:
        text = json.dumps(config)
        base = os.getcwd()
    return json.loads(_run_config_json(text, base, tol))


__all__ = [
    "QslError",
    "bures_increment",
    "bures_length",
    "check_trig_bound",
    "energy_variance",
    "evolve",
    "fidelity",
    "fisher_demo",
    "mean_energy",
    "qsl_time",
    "run",
    "tau_ml_linear",
    "tau_ml_quadratic",
    "tau_mt",
    "wootters_angle",
]
