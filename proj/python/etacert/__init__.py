"""Generalized Dedekind eta products and per-prime covering certificates."""

import json

from ._core import (
    ComputationError,
    InvalidInput,
    PrecisionError,
    QSeries,
    bernoulli_B,
    chi,
    context,
    cusps,
    epsilon,
    expand,
    find_triplet,
    is_prime,
    odd_primitive_root,
    psi,
    sawtooth_P2,
)
from ._core import certify_json as _certify_json


def certify(p, h=1, steps=10, **kwargs):
    """Run every per-prime check and return the report as a dict."""
    return json.loads(_certify_json(p, h=h, steps=steps, **kwargs))


__all__ = [
    "ComputationError",
    "InvalidInput",
    "PrecisionError",
    "QSeries",
    "bernoulli_B",
    "certify",
    "chi",
    "context",
    "cusps",
    "epsilon",
    "expand",
    "find_triplet",
    "is_prime",
    "odd_primitive_root",
    "psi",
    "sawtooth_P2",
]
