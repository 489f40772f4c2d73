"""Bounds and constructions for zero-error two-way channels."""

import json as _json

from ._twzec import (  # noqa: F401
    SCHEMA,
    ValidationError,
    __version__,
    fractional_clique_cover,
    kg_kk_bound,
    linear_code_L,
    lovasz_theta,
)
from . import _twzec


def _doc(channel):
    # accept a dict or a JSON string
    return channel if isinstance(channel, str) else _json.dumps(channel)


def outer_bounds(channel, lam=0.5, minimize_q=False):
    """The four outer bounds at one lambda, keyed by method name."""
    return _json.loads(_twzec._outer_at(_doc(channel), lam, minimize_q))


def report(channel, grid=11, minimize_q=False, exhaustive_n=0, seed=0):
    return _json.loads(_twzec._report(_doc(channel), grid, minimize_q, exhaustive_n, seed))


def one_shot(channel):
    return _json.loads(_twzec._one_shot(_doc(channel)))


def clique_union_construction(q, s, n, k, seed=0):
    return _json.loads(_twzec._clique_union(q, s, n, k, seed))


def is_uniquely_decodable(channel, n, a, b):
    return _twzec._uniquely_decodable(_doc(channel), n, a, b)
