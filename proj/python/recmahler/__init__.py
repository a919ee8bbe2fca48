"""Recurrence-generated Mahler functions from Python.

Rationals go in and come out as strings like "1/3"; reports are the same
JSON documents the command line writes, decoded into dicts.
"""

import json
from fractions import Fraction

from . import _core
from ._core import RecmahlerError, SCHEMA, __version__

__all__ = [
    "RecmahlerError",
    "SCHEMA",
    "analyze",
    "error_code",
    "evaluate",
    "relation",
    "rank_check",
    "run_cli",
    "term",
    "transfer_polynomial",
    "verify_suite",
]


def _q(x):
    return str(Fraction(x)) if not isinstance(x, str) else x


def error_code(err):
    """The library error name carried by a RecmahlerError, e.g. "PoleAtY"."""
    return str(err).split(":", 1)[0]


def run_cli(*args):
    code, out, err = _core.run_cli([str(a) for a in args])
    return code, out, err


def term(c, init, k):
    return _core.term(list(c), list(init), k)


def analyze(c, init, place="inf", point=None):
    return json.loads(_core.analyze(list(c), list(init), place, [_q(z) for z in point or []]))


def evaluate(function, c, init, a, x=0, y=0, dx=0, dy=0, place="inf", prec_bits=256, padic_digits=64):
    return json.loads(
        _core.evaluate(function, list(c), list(init), _q(a), _q(x), _q(y), dx, dy, place, prec_bits, padic_digits)
    )


def verify_suite(place="inf", prec_bits=256, padic_digits=64):
    return json.loads(_core.verify_suite(place, prec_bits, padic_digits))


def relation(values, height=1000, digits=50, degree=1):
    return json.loads(_core.relation([_q(v) for v in values], height, digits, degree))


def rank_check(mode, betas, M):
    return json.loads(_core.rank_check(mode, [_q(b) for b in betas], M))


def transfer_polynomial(kind, m):
    return {"A": _core.transfer_A, "B": _core.transfer_B, "C": _core.transfer_C}[kind](m)
