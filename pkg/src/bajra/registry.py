"""Named generators for the command line.

Recognised forms::

    gini:p,q            (x^p, x^q) on (0, inf)
    power:p             power mean of order p
    hyperboloid         (x, y, sqrt(1 + x^2 + y^2)) on R^2
    quasi:EXPR[,a,b]    (EXPR, 1), default interval (0, inf)
    ratio:E1,E2,a,b     (E1, E2) on (a, b)

Bounds accept ``inf`` and ``-inf``.
"""

from __future__ import annotations

import math

from .errors import UnknownMap
from .expr import compile_expression
from .families import gini_map, hyperboloid_map, power_map, quasi_arithmetic_map
from .maps import AdmissibleMap, ratio_map

__all__ = ["resolve_map"]


def _floats(parts: list[str], spec: str) -> list[float]:
    try:
        return [float(s) for s in parts]
    except ValueError:
        raise UnknownMap(f"cannot parse numbers in map spec {spec!r}") from None


def resolve_map(spec: str) -> AdmissibleMap:
    """Build the generator named by ``spec``.

    >>> resolve_map("gini:2,-1").name
    'gini:2,-1'
    """
    spec = spec.strip()
    kind, _, rest = spec.partition(":")
    kind = kind.lower()
    args = [s.strip() for s in rest.split(",")] if rest else []
    if kind == "hyperboloid" and not args:
        return hyperboloid_map()
    if kind == "gini" and len(args) == 2:
        p, q = _floats(args, spec)
        return gini_map(p, q)
    if kind == "power" and len(args) == 1:
        (p,) = _floats(args, spec)
        return power_map(p)
    if kind == "quasi" and len(args) in (1, 3):
        a, b = _floats(args[1:], spec) if len(args) == 3 else (0.0, math.inf)
        return quasi_arithmetic_map(compile_expression(args[0]), a, b, name=spec)
    if kind == "ratio" and len(args) == 4:
        a, b = _floats(args[2:], spec)
        return ratio_map(compile_expression(args[0]), compile_expression(args[1]), a, b, name=spec)
    raise UnknownMap(f"unknown map spec {spec!r}")
