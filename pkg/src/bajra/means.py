"""Generalized Bajraktarevic means and their effort functions.

For an admissible ``f`` the weighted sum ``v = sum_k l_k f(x_k)`` lies on
exactly one ray through the image of ``f``. The mean is the decision ``u``
whose image spans that ray and the effort is the scale ``eta`` with
``eta * f(u) = v``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConsistencyError, MismatchedShapes, NegativeWeight, ZeroWeightVector
from .maps import AdmissibleMap, ray_solve
from .profiles import DecisionProfile, make_profile, point_value, _from_arrays

__all__ = [
    "AggregationOutcome",
    "CasuativityReport",
    "aggregate",
    "mean",
    "effort",
    "image_sum",
    "aggregate_with_delegation",
    "delegate_matrix",
    "check_casuativity",
    "decisions_close",
    "efforts_close",
    "DECISION_RTOL",
    "DECISION_ATOL",
]

DECISION_RTOL = 1e-9
DECISION_ATOL = 1e-12


@dataclass(frozen=True)
class AggregationOutcome:
    """The pair ``(u, eta)``: aggregated decision and aggregated effort."""

    point: np.ndarray
    effort: float
    scalar: bool = False

    @property
    def decision(self):
        """Decision as a float for scalar profiles, else a tuple."""
        return point_value(self.point, self.scalar)

    def as_dict(self) -> dict:
        d = self.decision
        return {"decision": d if self.scalar else list(d), "effort": self.effort}


@dataclass(frozen=True)
class CasuativityReport:
    mean_unchanged: bool
    y_equals_mean: bool

    @property
    def consistent(self) -> bool:
        return self.mean_unchanged == self.y_equals_mean


def decisions_close(a, b, rtol: float = DECISION_RTOL, atol: float = DECISION_ATOL) -> bool:
    """Coordinatewise closeness relative to the larger sup-norm of the two points."""
    a = np.atleast_1d(np.asarray(a, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    scale = max(np.max(np.abs(a)), np.max(np.abs(b)))
    return bool(np.all(np.abs(a - b) <= atol + rtol * scale))


def efforts_close(a: float, b: float, rtol: float = DECISION_RTOL, atol: float = DECISION_ATOL) -> bool:
    return abs(a - b) <= atol + rtol * max(abs(a), abs(b))


def image_sum(fmap: AdmissibleMap, p: DecisionProfile) -> np.ndarray:
    """``sum_k l_k f(x_k)`` with a correctly rounded sum per coordinate."""
    fmap.domain.check(p.decisions)
    images = fmap.images(p.decisions)
    # overflow surfaces as a non-finite sum, rejected by the ray solver
    with np.errstate(over="ignore"):
        terms = p.weights[:, None] * images
    return np.array([math.fsum(terms[:, j]) for j in range(images.shape[1])])


def aggregate(fmap: AdmissibleMap, p: DecisionProfile) -> AggregationOutcome:
    """Mean and effort of a profile under ``fmap``.

    >>> from bajra.families import gini_map
    >>> aggregate(gini_map(1, 0), make_profile([2, 4], [1, 1])).as_dict()
    {'decision': 3.0, 'effort': 2.0}
    """
    if p.dim != fmap.dim:
        raise MismatchedShapes(f"profile has dimension {p.dim}, {fmap.name} expects {fmap.dim}")
    u, eta = ray_solve(fmap, image_sum(fmap, p))
    return AggregationOutcome(u, eta, p.scalar)


def mean(fmap: AdmissibleMap, p: DecisionProfile):
    return aggregate(fmap, p).decision


def effort(fmap: AdmissibleMap, p: DecisionProfile) -> float:
    return aggregate(fmap, p).effort


def _profile_of_outcomes(outcomes: Sequence[AggregationOutcome], weights) -> DecisionProfile:
    x = np.vstack([o.point for o in outcomes])
    return _from_arrays(x, np.asarray(weights, dtype=float), outcomes[0].scalar)


def aggregate_with_delegation(fmap: AdmissibleMap, groups: Sequence[DecisionProfile]) -> AggregationOutcome:
    """Aggregate each group first, then aggregate the group representatives.

    Each group is replaced by its mean carrying its effort as weight.
    """
    if not groups:
        raise MismatchedShapes("need at least one group")
    inner = [aggregate(fmap, g) for g in groups]
    return aggregate(fmap, _profile_of_outcomes(inner, [o.effort for o in inner]))


def delegate_matrix(
    fmap: AdmissibleMap,
    decisions: Sequence,
    columns,
    t: Sequence[float],
    *,
    rtol: float = DECISION_RTOL,
) -> AggregationOutcome:
    """Aggregate ``(x, Lt)`` and cross-check it against the delegated form.

    ``columns`` is an ``n x m`` matrix whose columns are weight vectors for
    ``x``. With ``y_i, mu_i`` the mean and effort of column ``i`` the result
    must equal the aggregate of ``(y, mu * t)``; a disagreement beyond
    ``rtol`` raises :class:`ConsistencyError`.
    """
    L = np.asarray(columns, dtype=float)
    if L.ndim == 1:
        L = L.reshape(-1, 1)
    tt = np.asarray(list(t), dtype=float)
    base = make_profile(decisions, np.ones(len(decisions)))
    if L.shape != (base.n, tt.shape[0]):
        raise MismatchedShapes(f"weight matrix has shape {L.shape}, expected ({base.n}, {tt.shape[0]})")
    if np.any(L < 0) or np.any(tt < 0):
        raise NegativeWeight("weight columns and t must be nonnegative")
    if not np.all(L.any(axis=0)) or not tt.any():
        raise ZeroWeightVector("every column and t must have a positive entry")
    direct = aggregate(fmap, _from_arrays(base.decisions, L @ tt, base.scalar))
    cols = [aggregate(fmap, _from_arrays(base.decisions, L[:, i], base.scalar)) for i in range(L.shape[1])]
    mu = np.array([c.effort for c in cols])
    delegated = aggregate(fmap, _profile_of_outcomes(cols, mu * tt))
    if not (decisions_close(direct.point, delegated.point, rtol)
            and efforts_close(direct.effort, delegated.effort, rtol)):
        raise ConsistencyError(
            f"matrix delegation mismatch: {direct.as_dict()} vs {delegated.as_dict()}"
        )
    return direct


def check_casuativity(
    fmap: AdmissibleMap,
    p: DecisionProfile,
    y,
    mu: float,
    *,
    rtol: float = DECISION_RTOL,
) -> CasuativityReport:
    """Compare ``B((x, y), (l, mu)) = B(x, l)`` with ``y = B(x, l)``."""
    if not mu > 0:
        raise NegativeWeight("mu must be strictly positive")
    base = aggregate(fmap, p)
    y_row = np.atleast_1d(np.asarray(y, dtype=float))
    extended = _from_arrays(np.vstack([p.decisions, y_row]), np.append(p.weights, mu), p.scalar)
    moved = aggregate(fmap, extended)
    return CasuativityReport(
        mean_unchanged=decisions_close(moved.point, base.point, rtol),
        y_equals_mean=decisions_close(y_row, base.point, rtol),
    )
