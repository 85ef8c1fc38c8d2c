"""Poncelet closure checks and censuses over finite fields."""

import json

from . import _poncelet
from ._poncelet import ngon_condition, theorem_bounds, trace, verify_example

__all__ = [
    "char3",
    "ngon_condition",
    "pair_census",
    "pencil_census",
    "theorem_bounds",
    "trace",
    "verify_example",
]


def pencil_census(cls, p, r=1, n=3, params=()):
    """Counts over one eligible pencil, as a dict."""
    return json.loads(_poncelet.pencil_census_json(cls, p, r, n, list(params)))


def pair_census(p, r=1, n=3, exhaustive=False, mc=0, seed=1, workers=1):
    """Counts over pairs of conics, exhaustive (q <= 9) or Monte-Carlo."""
    return json.loads(_poncelet.pair_census_json(p, r, n, exhaustive, mc, seed, workers))


def char3(r):
    """Triangle census on the C_alpha pencil over F_{3^r}."""
    return json.loads(_poncelet.char3_json(r))
