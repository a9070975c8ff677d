"""Exact negative-dependence checks, monotone couplings and martingale tail bounds.

Rationals are returned as fractions.Fraction; anything accepting a rational
also takes an int, a Fraction or a "p/q" string.
"""

import json
from fractions import Fraction

from ._negdep import NegdepError, Measure, notions, theorem_bound as _theorem_bound
from . import _negdep as _core

__all__ = [
    "NegdepError",
    "Measure",
    "measure",
    "family",
    "notions",
    "check",
    "dominance",
    "coupling",
    "pick_index",
    "martingale",
    "tail",
    "theorem_bound",
    "run_cli",
    "frac",
]


def frac(value):
    """Parse a "p/q" string (or anything Fraction accepts)."""
    return Fraction(value)


def _q(value):
    return str(Fraction(value))


def measure(n, atoms):
    """Build a measure from {bitstring: probability}."""
    return Measure(n, {x: _q(p) for x, p in atoms.items()})


def family(spec):
    return Measure.family(spec)


def _function(f):
    if isinstance(f, str):
        return f
    return [_q(v) for v in f]


def check(m, notion):
    return json.loads(_core.check(m, notion))


def dominance(lower, upper, covering=False):
    return json.loads(_core.dominance(lower, upper, covering))


def coupling(lower, upper, covering=False):
    return json.loads(_core.coupling(lower, upper, covering))


def pick_index(m, revealed=None):
    return json.loads(_core.pick_index(m, dict(revealed or {})))


def martingale(m, f="sum", order=None, monotone=False):
    return json.loads(_core.martingale(m, _function(f), order, monotone))


def tail(m, f="sum", grid=None, monotone=False):
    g = None if grid is None else [_q(t) for t in grid]
    return json.loads(_core.tail(m, _function(f), g, monotone))


def theorem_bound(n, t, monotone=False):
    return _theorem_bound(n, _q(t), monotone)


def run_cli(args):
    """Run the command-line tool in-process; returns (exit_code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
