"""f-convex hulls of finite generator sets.

``y`` belongs to the f-convex hull of ``S`` exactly when ``f(y)`` lies in
the cone spanned by ``f(S)``; the weights of that conic combination, scaled
to sum to one, reproduce ``y`` as the mean of ``S``. Membership is decided
by nonnegative least squares on the normalised target.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import nnls

from .errors import ValidationError
from .means import aggregate
from .maps import AdmissibleMap
from .profiles import DecisionProfile, _from_arrays, make_profile

__all__ = [
    "HullQuery",
    "HullCertificate",
    "fconvex_hull_weights",
    "in_fconvex_hull",
    "sample_fconvex_hull",
    "FConvexityVerdict",
    "check_fconvexity",
]

HULL_TOL = 1e-9


@dataclass(frozen=True)
class HullQuery:
    generators: DecisionProfile
    query: np.ndarray

    @classmethod
    def of(cls, generators: Sequence, query) -> "HullQuery":
        gens = make_profile(list(generators), [1.0] * len(generators))
        y = np.atleast_1d(np.asarray(query, dtype=float))
        if y.shape[0] != gens.dim:
            raise ValidationError("query and generators have different dimensions")
        return cls(gens, y)


@dataclass(frozen=True)
class HullCertificate:
    """Weights ``l`` (summing to one) and scale ``eta`` with ``eta f(y) ~ sum l f(s)``."""

    member: bool
    weights: np.ndarray
    effort: float
    residual: float


def fconvex_hull_weights(fmap: AdmissibleMap, q: HullQuery, *, tol: float = HULL_TOL) -> HullCertificate:
    gens = q.generators
    fmap.domain.check(gens.decisions)
    fmap.domain.check(q.query.reshape(1, -1))
    F = fmap.images(gens.decisions)
    target = fmap(q.query)
    target = target / np.linalg.norm(target)
    scale = np.linalg.norm(F, axis=1)
    c, resid = nnls((F / scale[:, None]).T, target)
    c = c / scale
    total = math.fsum(c)
    if not total > 0:
        return HullCertificate(False, np.zeros_like(c), math.nan, float(resid))
    return HullCertificate(bool(resid <= tol), c / total, 1.0 / total, float(resid))


def in_fconvex_hull(fmap: AdmissibleMap, q: HullQuery, *, tol: float = HULL_TOL) -> bool:
    """True iff some weights on the generators have mean ``q.query``."""
    return fconvex_hull_weights(fmap, q, tol=tol).member


def sample_fconvex_hull(
    fmap: AdmissibleMap,
    generators: Sequence,
    count: int,
    *,
    seed: int | np.random.Generator = 42,
) -> list:
    """Means of the generators under weights drawn uniformly from the simplex."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    base = make_profile(list(generators), [1.0] * len(generators))
    out = []
    for _ in range(count):
        w = rng.dirichlet(np.ones(base.n))
        w = np.where(w > 0, w, 0.0)
        if not w.any():
            w[int(rng.integers(base.n))] = 1.0
        out.append(aggregate(fmap, _from_arrays(base.decisions, w, base.scalar)).decision)
    return out


@dataclass(frozen=True)
class FConvexityVerdict:
    passed: bool
    trials: int
    witness: DecisionProfile | None = None
    witness_mean: object = None


def check_fconvexity(
    fmap: AdmissibleMap,
    contains: Callable[[object], bool],
    sample: Callable[[np.random.Generator, int], Sequence],
    trials: int = 500,
    *,
    seed: int = 42,
    n_max: int = 5,
) -> FConvexityVerdict:
    """Sampling test that a region is closed under the mean.

    ``sample(rng, n)`` draws ``n`` points of the region and ``contains``
    decides membership. The first mean found outside the region is
    returned as a witness.
    """
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        n = int(rng.integers(1, n_max + 1))
        pts = list(sample(rng, n))
        w = rng.uniform(0.0, 1.0, n)
        w[int(rng.integers(n))] += 0.1
        prof = make_profile(pts, w)
        m = aggregate(fmap, prof).decision
        if not contains(m):
            return FConvexityVerdict(False, trials, prof, m)
    return FConvexityVerdict(True, trials)
