"""Deciding whether two generators induce the same mean.

Two admissible generators on a common domain give the same mean exactly
when one is a linear image of the other. Numerically: fit ``A`` with
``g(x) ~ A f(x)`` by least squares on sample points, then compare means and
efforts on random probe profiles. A positive verdict means "consistent with
equality on the probes", not a proof.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NumericError, RankDeficientSamples, ValidationError
from .maps import AdmissibleMap
from .means import aggregate
from .profiles import DecisionProfile, make_profile, split_signed_weights
from .synergy import random_profile

__all__ = [
    "LinearFit",
    "EqualityVerdict",
    "fit_linear_map",
    "test_mean_equality",
    "verify_signed_claim",
    "FIT_TOL",
    "PROBE_TOL",
]

FIT_TOL = 1e-8
PROBE_TOL = 1e-8


@dataclass(frozen=True)
class LinearFit:
    matrix: np.ndarray
    residual: float
    rank: int


@dataclass(frozen=True)
class EqualityVerdict:
    equal: bool
    linear_map: np.ndarray | None
    max_fit_residual: float
    max_mean_discrepancy: float
    max_effort_discrepancy: float
    fitted_rank: int = 0
    probes: int = 0
    witness: DecisionProfile | None = None
    witness_means: tuple | None = None

    def summary(self) -> str:
        if self.equal:
            return f"consistent with equality on {self.probes} probes"
        return f"not equal (max mean discrepancy {self.max_mean_discrepancy:.3e})"


def fit_linear_map(f: AdmissibleMap, g: AdmissibleMap, sample_points) -> LinearFit:
    """Least-squares ``A`` minimising ``sum |g(x_i) - A f(x_i)|^2``.

    The residual is ``max_i |g(x_i) - A f(x_i)| / |g(x_i)|``. Samples whose
    f-images do not span ``R^k`` are refused.
    """
    pts = np.asarray(sample_points, dtype=float)
    pts = pts.reshape(-1, f.dim)
    f.domain.check(pts)
    g.domain.check(pts)
    F = f.images(pts)
    G = g.images(pts)
    rank = int(np.linalg.matrix_rank(F))
    if rank < f.range_dim:
        raise RankDeficientSamples(
            f"f-images of {pts.shape[0]} samples have rank {rank} < {f.range_dim}"
        )
    At, *_ = np.linalg.lstsq(F, G, rcond=None)
    A = At.T
    resid = np.linalg.norm(G - F @ At, axis=1) / np.linalg.norm(G, axis=1)
    return LinearFit(A, float(resid.max()), int(np.linalg.matrix_rank(A)))


def _relative(a, b) -> float:
    a = np.atleast_1d(np.asarray(a, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    scale = max(np.max(np.abs(a)), np.max(np.abs(b)), 1e-300)
    return float(np.max(np.abs(a - b)) / scale)


def test_mean_equality(
    f: AdmissibleMap,
    g: AdmissibleMap,
    fit_samples=None,
    probe_profiles: Sequence[DecisionProfile] | None = None,
    *,
    n_probes: int = 1000,
    seed: int = 42,
    fit_tol: float = FIT_TOL,
    probe_tol: float = PROBE_TOL,
) -> EqualityVerdict:
    """Fit ``g ~ A f`` and compare means and efforts on probe profiles.

    Missing samples or probes are drawn from ``f``'s domain with ``seed``.
    The witness is the first probe whose mean or effort discrepancy
    exceeds ``probe_tol``.
    """
    if f.dim != g.dim:
        raise ValidationError("maps must share a domain")
    rng = np.random.default_rng(seed)
    if fit_samples is None:
        fit_samples = f.domain.sample(rng, max(16, 4 * f.range_dim))
    fit = fit_linear_map(f, g, fit_samples)
    if probe_profiles is None:
        probe_profiles = [random_profile(f, rng) for _ in range(n_probes)]
    worst_mean = worst_effort = 0.0
    witness = None
    witness_means = None
    for prof in probe_profiles:
        a = aggregate(f, prof)
        try:
            b = aggregate(g, prof)
        except NumericError:
            dm = de = float("inf")
            means = (a.decision, None)
        else:
            dm = _relative(a.point, b.point)
            de = _relative(a.effort, b.effort)
            means = (a.decision, b.decision)
        worst_mean = max(worst_mean, dm)
        worst_effort = max(worst_effort, de)
        # the first probe that separates the maps is the reported witness
        if witness is None and (dm > probe_tol or de > probe_tol):
            witness, witness_means = prof, means
    equal = fit.residual <= fit_tol and worst_mean <= probe_tol and worst_effort <= probe_tol
    return EqualityVerdict(
        equal=equal,
        linear_map=fit.matrix,
        max_fit_residual=fit.residual,
        max_mean_discrepancy=worst_mean,
        max_effort_discrepancy=worst_effort,
        fitted_rank=fit.rank,
        probes=len(probe_profiles),
        witness=witness,
        witness_means=witness_means,
    )


test_mean_equality.__test__ = False  # not a pytest test despite the name


def _combination_vanishes(fmap: AdmissibleMap, x, split, tol: float) -> bool:
    pos, neg = split.positive_part, split.negative_part
    if not pos.any() or not neg.any():
        # a nonzero one-signed combination never vanishes: 0 is outside conv f(D)
        return False
    a = aggregate(fmap, make_profile(x, pos))
    b = aggregate(fmap, make_profile(x, neg))
    return _relative(a.point, b.point) <= tol and _relative(a.effort, b.effort) <= tol


def verify_signed_claim(
    f: AdmissibleMap,
    g: AdmissibleMap,
    x: Sequence,
    weights: Sequence[float],
    *,
    tol: float = PROBE_TOL,
) -> bool:
    """Check ``sum l f(x) = 0  <=>  sum l g(x) = 0`` for signed weights ``l``.

    Each side is decided by splitting ``l`` into positive and negative parts
    and comparing the two aggregated (mean, effort) pairs.
    """
    split = split_signed_weights(weights)
    if not split.positive_part.any() and not split.negative_part.any():
        return True
    return _combination_vanishes(f, x, split, tol) == _combination_vanishes(g, x, split, tol)
