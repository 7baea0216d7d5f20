"""Quantile-based skewness measures, delta-method intervals and coverage studies."""

import json as _json

from ._core import (
    Distribution,
    SkewkitError,
    curve,
    difference_interval,
    estimate,
    interval,
    population,
)
from ._core import _simulate_json

__all__ = [
    "Distribution",
    "SkewkitError",
    "curve",
    "difference_interval",
    "estimate",
    "interval",
    "population",
    "simulate",
]

__version__ = "0.1.0"


def simulate(dist, n, trials=1000, measures="auc_gamma", seed=42, level=0.95,
             threads=None, J=None, direction=None, bandwidth=None):
    """Seeded coverage study; returns the report as a dict.

    `measures` is a comma-separated list or a sequence of measure names.
    Results do not depend on `threads`.
    """
    config = {"dist": dist, "n": n, "trials": trials, "seed": seed, "level": level,
              "measures": measures if isinstance(measures, str) else list(measures)}
    for key, value in (("threads", threads), ("J", J), ("direction", direction),
                       ("bandwidth", bandwidth)):
        if value is not None:
            config[key] = value
    return _json.loads(_simulate_json(_json.dumps(config)))
