"""Finite simplicial groups, chain complexes of groups and their torsion theories.

Objects are passed as builtin specs ("Z4", "D4", "em(Z2,1,3)"), JSON text,
JSON file paths or already-decoded dicts. Results come back as decoded JSON,
or as the plain-text rendering with ``text=True``.
"""

import json

from . import _simptor
from ._simptor import Caps, suite_names

Error = _simptor.Error
Error.code = property(lambda e: e.args[0])
Error.message = property(lambda e: e.args[1])
Error.exit_status = property(lambda e: e.args[2])

__all__ = [
    "Caps",
    "Error",
    "abelian_invariants",
    "are_isomorphic",
    "build",
    "cosk",
    "cot",
    "em",
    "homotopy",
    "lattice",
    "level_orders",
    "moore",
    "pi",
    "radical",
    "suite_names",
    "verify",
]


def _source(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def _caps(caps):
    return Caps.from_env() if caps is None else caps


def _finish(out, text):
    value, rendered, _ = out
    return rendered if text else json.loads(value)


def build(obj, caps=None, text=False):
    return _finish(_simptor.build(_source(obj), _caps(caps)), text)


def level_orders(obj, caps=None):
    j = build(obj, caps)
    if "levels" in j:
        return [g["order"] for g in j["levels"]]
    if "objects" in j:
        return [g["order"] for g in j["objects"]]
    return [j["order"]]


def moore(obj, caps=None, text=False):
    return _finish(_simptor.moore(_source(obj), _caps(caps)), text)


def homotopy(obj, caps=None, text=False):
    return _finish(_simptor.homotopy(_source(obj), _caps(caps)), text)


def radical(obj, theory, n, caps=None, text=False):
    return _finish(_simptor.radical(_source(obj), theory, n, _caps(caps)), text)


def cot(obj, n, caps=None, text=False):
    return _finish(_simptor.cot(_source(obj), n, _caps(caps)), text)


def cosk(obj, n, caps=None, text=False):
    return _finish(_simptor.cosk(_source(obj), n, _caps(caps)), text)


def lattice(obj, caps=None, text=False):
    return _finish(_simptor.lattice(_source(obj), _caps(caps)), text)


def em(group, n, D, caps=None, text=False):
    return _finish(_simptor.em(group, n, D, _caps(caps)), text)


def pi(obj, upper="id", lower="zero", caps=None, text=False):
    return _finish(_simptor.pi(_source(obj), upper, lower, _caps(caps)), text)


def verify(suite="all", seed=7, caps=None, text=False):
    return _finish(_simptor.verify(suite, seed, _caps(caps)), text)


def abelian_invariants(group, caps=None):
    return _simptor.abelian_invariants(_source(group), _caps(caps))


def are_isomorphic(g, h, caps=None):
    return _simptor.are_isomorphic(_source(g), _source(h), _caps(caps))
