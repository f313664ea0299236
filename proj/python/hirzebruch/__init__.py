"""Exact and numeric checks for Hirzebruch line arrangements.

Report-producing functions return dictionaries with the fields of the
``--json`` output of the ``hirz`` command line tool, without the command echo
and timings.
"""

import json as _json

from . import _core
from ._core import (
    DegenerateError,
    DomainError,
    InputError,
    PrecisionError,
    catalog_names,
    parity_bound,
    regular_edge,
    sector_angle,
    t_profile_solver,
)

__all__ = [
    "DegenerateError",
    "DomainError",
    "InputError",
    "PrecisionError",
    "catalog_names",
    "catalog_emit",
    "check",
    "metric",
    "polygon_selftest",
    "consistency",
    "search",
    "t_profile_solver",
    "sector_angle",
    "regular_edge",
    "parity_bound",
]


def _text(arrangement):
    return arrangement if isinstance(arrangement, str) else _json.dumps(arrangement)


def catalog_emit(name):
    """Arrangement file of a catalog entry, as a dictionary."""
    return _json.loads(_core.catalog_emit(name))


def check(arrangement, max_bits=1024):
    return _json.loads(_core.check(_text(arrangement), max_bits))


def metric(arrangement, n=None, tol=1e-9):
    return _json.loads(_core.metric(_text(arrangement), n, tol))


def polygon_selftest(samples=1000, seed=42, tol=1e-9):
    return _json.loads(_core.polygon_selftest(samples, seed, tol))


def consistency(d_min=3, d_max=5, n_max=100, tol=1e-9):
    return _json.loads(_core.consistency(d_min, d_max, n_max, tol))


def search(n, mode="counting_only", jobs=1, budget=None):
    return _json.loads(_core.search(n, mode, jobs, budget))
