"""Conservative aggregators and the arithmetic effort.

All four rules return one of the input decisions. They are reflexive,
eliminative and nullhomogeneous in the weights but depend on the order of
the entries.
"""

from __future__ import annotations

import enum
import math

import numpy as np

from .errors import BadArguments
from .profiles import DecisionProfile, point_value

__all__ = ["SelectiveRule", "select", "arithmetic_effort"]


class SelectiveRule(enum.Enum):
    PRIMACY_EFFECT = "pe"
    RECENCY_EFFECT = "re"
    FIRST_DOMINATING_DECISION = "fdd"
    FIRST_DOMINANT = "fd"

    @classmethod
    def parse(cls, name: str) -> "SelectiveRule":
        try:
            return cls(name.lower())
        except ValueError:
            raise BadArguments(f"unknown rule {name!r}; choose from pe, re, fdd, fd") from None


def _first_max(weights: np.ndarray) -> int:
    # np.argmax returns the first index attaining the maximum
    return int(np.argmax(weights))


def select(rule: SelectiveRule | str, p: DecisionProfile):
    """Apply a selective rule and return the chosen decision."""
    if isinstance(rule, str):
        rule = SelectiveRule.parse(rule)
    nonzero = np.flatnonzero(p.weights > 0)
    if rule is SelectiveRule.PRIMACY_EFFECT:
        idx = int(nonzero[0])
    elif rule is SelectiveRule.RECENCY_EFFECT:
        idx = int(nonzero[-1])
    elif rule is SelectiveRule.FIRST_DOMINATING_DECISION:
        idx = _first_max(p.weights)
    else:
        keys = [row.tobytes() for row in p.decisions]
        totals: dict[bytes, list[float]] = {}
        for key, w in zip(keys, p.weights):
            totals.setdefault(key, []).append(w)
        # zero-weight entries get no pooled weight; otherwise they could win a
        # tie on behalf of a later equal decision and break elimination
        pooled = np.array([math.fsum(totals[key]) if w > 0 else 0.0 for key, w in zip(keys, p.weights)])
        idx = _first_max(pooled)
    return point_value(p.decisions[idx], p.scalar)


def arithmetic_effort(p: DecisionProfile) -> float:
    """Sum of the weights."""
    return math.fsum(p.weights)
