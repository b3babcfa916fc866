"""Bi-octonion algebra toolkit.

Thin dict-in/dict-out wrappers over the compiled core.  Inputs follow the
same JSON schemas as the ``bioctool`` command line; see the README for the
field, form, and descriptor shapes.
"""

import json as _json

from ._bioct import (  # noqa: F401
    InvariantError,
    JsonIoError,
    TkkError,
)
from . import _bioct as _core

__all__ = [
    "InvariantError",
    "JsonIoError",
    "TkkError",
    "algebra_build",
    "algebra_invariants",
    "algebra_division",
    "algebra_isotopic",
    "algebra_decompose",
    "form_witt",
    "form_en",
    "form_similar",
    "tkk_profile",
    "rost_construct",
    "selftest",
]


def _wrap(name):
    fn = getattr(_core, name)

    def call(obj, **kwargs):
        return _json.loads(fn(_json.dumps(obj), **kwargs))

    call.__name__ = name
    call.__doc__ = fn.__doc__
    return call


algebra_build = _wrap("algebra_build")
algebra_invariants = _wrap("algebra_invariants")
algebra_division = _wrap("algebra_division")
algebra_isotopic = _wrap("algebra_isotopic")
algebra_decompose = _wrap("algebra_decompose")
form_witt = _wrap("form_witt")
form_en = _wrap("form_en")
form_similar = _wrap("form_similar")
tkk_profile = _wrap("tkk_profile")
rost_construct = _wrap("rost_construct")


def selftest(seed=0, trials=100):
    """Run the acceptance criteria; trials is a percentage of the CI profile."""
    return _json.loads(_core.selftest(seed=seed, trials=trials))
