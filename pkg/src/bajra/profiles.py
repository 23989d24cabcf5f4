"""Weighted decision profiles.

A profile is a list of ``n`` decisions together with ``n`` nonnegative
weights, not all zero. Decisions are points of ``R^d``; when every decision
was given as a bare number the profile is flagged ``scalar`` and results
derived from it are reported as plain floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from .errors import (
    EmptyProfile,
    MismatchedLengths,
    NegativeWeight,
    NonFiniteWeight,
    RaggedDecisions,
    ZeroWeightVector,
)

__all__ = [
    "DecisionProfile",
    "SignedWeightSplit",
    "make_profile",
    "normalize_profile",
    "split_signed_weights",
    "profile_from_json",
    "profile_to_json",
    "point_value",
]


@dataclass(frozen=True, eq=False)
class DecisionProfile:
    """Validated pair ``(x, lambda)``.

    ``decisions`` has shape ``(n, d)`` and ``weights`` shape ``(n,)``; both
    arrays are read-only. Build instances with :func:`make_profile`.
    """

    decisions: np.ndarray
    weights: np.ndarray
    scalar: bool = False

    def __len__(self) -> int:
        return self.weights.shape[0]

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    @property
    def dim(self) -> int:
        return self.decisions.shape[1]

    def points(self) -> list:
        """Decisions as plain Python values (floats or tuples)."""
        return [point_value(row, self.scalar) for row in self.decisions]

    def total_weight(self) -> float:
        return math.fsum(self.weights)

    def __repr__(self) -> str:
        return f"DecisionProfile(decisions={self.points()!r}, weights={self.weights.tolist()!r})"


@dataclass(frozen=True)
class SignedWeightSplit:
    positive_part: np.ndarray
    negative_part: np.ndarray


def point_value(row: np.ndarray, scalar: bool):
    """Convert a length-``d`` row into the user-facing representation."""
    if scalar:
        return float(row[0])
    return tuple(float(c) for c in row)


def _floats(item) -> np.ndarray:
    try:
        return np.asarray(item, dtype=float)
    except (TypeError, ValueError):
        raise RaggedDecisions(f"decisions must be real numbers or vectors, got {item!r}") from None


def _as_decision_array(decisions: Sequence[Any]) -> tuple[np.ndarray, bool]:
    items = list(decisions)
    if not items:
        raise EmptyProfile("a profile needs at least one decision")
    scalar_flags = [np.ndim(item) == 0 for item in items]
    if all(scalar_flags):
        return _floats(items).reshape(-1, 1), True
    if any(scalar_flags):
        raise RaggedDecisions("decisions mix scalars and vectors")
    rows = [_floats(item).ravel() for item in items]
    dims = {row.shape[0] for row in rows}
    if len(dims) != 1 or 0 in dims:
        raise RaggedDecisions(f"decisions have inconsistent dimensions {sorted(dims)}")
    return np.vstack(rows), False


def _validated_weights(weights: Sequence[float]) -> np.ndarray:
    try:
        w = np.asarray(list(weights), dtype=float).ravel()
    except (TypeError, ValueError):
        raise NonFiniteWeight(f"weights must be real numbers, got {weights!r}") from None
    if not np.all(np.isfinite(w)):
        raise NonFiniteWeight("weights must be finite reals")
    if np.any(w < 0):
        raise NegativeWeight(f"weights must be nonnegative, got {w.tolist()}")
    if not np.any(w > 0):
        raise ZeroWeightVector("at least one weight must be positive")
    return w


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.setflags(write=False)
    return a


def make_profile(decisions: Sequence[Any], weights: Sequence[float]) -> DecisionProfile:
    """Validate and freeze a profile.

    >>> make_profile([2, 4], [1, 1]).points()
    [2.0, 4.0]
    """
    x, scalar = _as_decision_array(decisions)
    w_list = list(weights)
    if not w_list:
        raise EmptyProfile("a profile needs at least one weight")
    if len(w_list) != x.shape[0]:
        raise MismatchedLengths(f"{x.shape[0]} decisions but {len(w_list)} weights")
    w = _validated_weights(w_list)
    return DecisionProfile(_frozen(x), _frozen(w), scalar)


def _from_arrays(x: np.ndarray, w: np.ndarray, scalar: bool) -> DecisionProfile:
    # internal constructor for arrays that are already known to be valid
    return DecisionProfile(_frozen(x), _frozen(w), scalar)


def normalize_profile(p: DecisionProfile) -> DecisionProfile:
    """Drop zero-weight entries and merge equal decisions.

    Decisions are merged only when bitwise equal. The surviving entries keep
    the order of their first occurrence.
    """
    order: dict[bytes, int] = {}
    rows: list[np.ndarray] = []
    sums: list[list[float]] = []
    for row, weight in zip(p.decisions, p.weights):
        if weight == 0:
            continue
        key = row.tobytes()
        idx = order.get(key)
        if idx is None:
            order[key] = len(rows)
            rows.append(row)
            sums.append([weight])
        else:
            sums[idx].append(weight)
    w = np.array([math.fsum(s) for s in sums])
    return _from_arrays(np.vstack(rows), w, p.scalar)


def split_signed_weights(weights: Sequence[float]) -> SignedWeightSplit:
    """Split a signed vector into disjointly supported nonnegative parts."""
    lam = np.asarray(list(weights), dtype=float)
    return SignedWeightSplit(np.maximum(lam, 0.0) + 0.0, np.maximum(-lam, 0.0) + 0.0)


def profile_from_json(obj: Any) -> DecisionProfile:
    """Parse ``{"decisions": [...], "weights": [...]}``."""
    if not isinstance(obj, dict) or "decisions" not in obj or "weights" not in obj:
        raise MismatchedLengths('profile JSON needs "decisions" and "weights" keys')
    return make_profile(obj["decisions"], obj["weights"])


def profile_to_json(p: DecisionProfile) -> dict:
    return {"decisions": [v if p.scalar else list(v) for v in p.points()],
            "weights": p.weights.tolist()}
