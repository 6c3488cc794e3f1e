"""Braid orbits of Nielsen classes.

Thin wrapper over the C++ core. Group specs, class lists and profiles use
the same text syntax as the nbl command line tool.
"""

import json

from . import _core
from ._core import BudgetExceeded, Error, ParseError, PreconditionError, braid, group_order, suite_names

__all__ = [
    "BudgetExceeded",
    "Error",
    "ParseError",
    "PreconditionError",
    "braid",
    "classes",
    "components",
    "cpfv",
    "group_order",
    "hf_count",
    "is_rational",
    "lift",
    "series",
    "suite_names",
    "verify",
]


def classes(group):
    return json.loads(_core.classes_json(group))


def components(group, r, classes="all", profile="", base="p1", equiv="marked", cover="any", threads=1):
    return json.loads(_core.components_json(group, r, classes, profile, base, equiv, cover, threads))


def series(group, r_min, r_max, classes="all", base="p1", equiv="marked", cover="any", threads=1):
    out = json.loads(_core.series_json(group, r_min, r_max, classes, base, equiv, cover, threads))
    out["points"] = {int(r): n for r, n in out["points"].items()}
    return out


def hf_count(group, subgroup, xi, r, strict=False):
    return _core.hf_count(group, list(subgroup), xi, r, strict)


def is_rational(group, profile):
    """(rational, witness m or None, moved class representative or None)"""
    return _core.is_rational(group, profile)


def lift(tuple_):
    """Lifting invariant of an A4 tuple of 3-cycles under the builtin cover."""
    return json.loads(_core.lift_json(list(tuple_)))


def cpfv(r_min, r_max, threads=1):
    return json.loads(_core.cpfv_json(r_min, r_max, threads))


def verify(suite, threads=1):
    return json.loads(_core.verify_json(suite, threads))
