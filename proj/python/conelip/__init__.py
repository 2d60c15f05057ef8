"""Python front end for the conelip library.

Maps, seminorms and metrics are passed as JSON-compatible dicts (the same
schema the command-line tool reads); certificates come back as dicts.
"""

import json

from . import _conelip
from ._conelip import (
    InputError,
    PolyCone,
    ResourceError,
    cone_member,
    full_hull_member,
    is_pointed,
    lattice_ops,
    nonlipschitz_witness,
    order_le,
    polynomial_example,
    vesely_step1,
)

__all__ = [
    "InputError",
    "PolyCone",
    "ResourceError",
    "certify_1d",
    "certify_ball",
    "cone_member",
    "convexity_check",
    "epigraph_midpoint_check",
    "evaluate",
    "full_hull_member",
    "is_pointed",
    "lattice_ops",
    "metric_eval",
    "nonlipschitz_witness",
    "normality_gamma",
    "order_le",
    "polynomial_example",
    "run",
    "seminorm_eval",
    "vesely_step1",
]


def _text(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def seminorm_eval(spec, x):
    return _conelip.seminorm_eval(_text(spec), x)


def normality_gamma(cone, q, exact=True, samples=256, seed=1):
    return _conelip.normality_gamma(cone, _text(q), exact, samples, seed)


def evaluate(fmap, x):
    return _conelip.evaluate(_text(fmap), x)


def convexity_check(fmap, samples=2000, seed=1):
    return _conelip.convexity_check(_text(fmap), samples, seed)


def epigraph_midpoint_check(fmap, samples=2000, seed=1):
    return _conelip.epigraph_midpoint_check(_text(fmap), samples, seed)


def certify_1d(phi, a, alpha, beta, b):
    return json.loads(_conelip.certify_1d(phi, a, alpha, beta, b))


def certify_ball(fmap, q, p, x0, R, r, beta=None):
    return json.loads(_conelip.certify_ball(_text(fmap), _text(q), _text(p), x0, R, r, beta))


def metric_eval(metric, x, y):
    return _conelip.metric_eval(_text(metric), x, y)


def run(command, input="", seed=1, pairs=10000):
    """Same as the command-line tool; returns (exit_code, stdout, stderr)."""
    return _conelip.run(command, input, seed, pairs)
