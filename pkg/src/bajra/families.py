"""Closed-form generator families.

* Gini means ``G_{p,q}`` from the generator ``(x^p, x^q)`` on ``(0, inf)``,
  with the logarithmic generator ``(x^p ln x, x^p)`` on the diagonal.
* Power means, the Gini means with ``q = 0``.
* Quasi-arithmetic means from ``(g, 1)``; their effort is the plain sum of
  weights.
* The hyperboloid mean on ``R^2`` from ``(x, y, sqrt(1 + x^2 + y^2))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainViolation, NonPositiveDecision, OutsideCone, WrongDimension
from .maps import AdmissibleMap, box, interval, ratio_map
from .profiles import DecisionProfile

__all__ = [
    "GiniParams",
    "PowerSums",
    "power_sums",
    "gini_mean",
    "gini_effort",
    "gini_map",
    "power_map",
    "hyperboloid_map",
    "quasi_arithmetic_map",
    "DIAGONAL_TOL",
]

# below this |p - q| the diagonal (logarithmic) formulas are used at (p + q) / 2
DIAGONAL_TOL = 1e-8
# max |p ln x| above which power sums are formed in the log domain
_SHIFT_THRESHOLD = 30.0
_TINY = np.finfo(float).tiny


@dataclass(frozen=True)
class GiniParams:
    p: float
    q: float

    def __post_init__(self):
        if not (math.isfinite(self.p) and math.isfinite(self.q)):
            raise DomainViolation("Gini parameters must be finite")

    @property
    def diagonal(self) -> bool:
        return abs(self.p - self.q) < DIAGONAL_TOL


@dataclass(frozen=True)
class PowerSums:
    """``phi_p = sum l x^p`` and ``psi_p = sum l x^p ln x``, kept in log form.

    ``log_phi`` is ``ln phi_p`` and ``mean_log`` is ``psi_p / phi_p``, which
    stay finite where ``phi_p`` itself would overflow.
    """

    log_phi: float
    mean_log: float

    @property
    def phi(self) -> float:
        return math.exp(self.log_phi)

    @property
    def psi(self) -> float:
        return self.mean_log * math.exp(self.log_phi)


def _positive_scalar_data(prof: DecisionProfile) -> tuple[np.ndarray, np.ndarray]:
    if prof.dim != 1:
        raise WrongDimension("Gini means are defined for scalar decisions")
    keep = prof.weights > 0
    x = prof.decisions[keep, 0]
    if np.any(x <= 0):
        raise NonPositiveDecision("Gini means need strictly positive decisions")
    return x, prof.weights[keep]


def _softmax_weights(log_x: np.ndarray, lam: np.ndarray, p: float) -> np.ndarray:
    a = np.log(lam) + p * log_x
    w = np.exp(a - a.max())
    return w / math.fsum(w)


def power_sums(x: np.ndarray, lam: np.ndarray, p: float) -> PowerSums:
    """Weighted power sums of positive ``x`` with positive weights ``lam``."""
    log_x = np.log(x)
    if np.max(np.abs(p * log_x)) > _SHIFT_THRESHOLD:
        a = np.log(lam) + p * log_x
        top = a.max()
        e = np.exp(a - top)
        s = math.fsum(e)
        return PowerSums(top + math.log(s), math.fsum(e * log_x) / s)
    terms = lam * x**p
    phi = math.fsum(terms)
    return PowerSums(math.log(phi), math.fsum(terms * log_x) / phi)


def _log_gini(x: np.ndarray, lam: np.ndarray, p: float, q: float) -> tuple[float, float]:
    """Return ``(ln G_{p,q}, ln gamma_{p,q})`` for ``p >= q``."""
    delta = p - q
    if delta < DIAGONAL_TOL:
        m = 0.5 * (p + q)
        s = power_sums(x, lam, m)
        return s.mean_log, s.log_phi - m * s.mean_log
    log_x = np.log(x)
    sq = power_sums(x, lam, q)
    if np.max(np.abs(delta * log_x)) <= 1.0:
        # ln(phi_p / phi_q) = ln(1 + sum w (x^delta - 1)), w proportional to l x^q
        w = _softmax_weights(log_x, lam, q)
        log_ratio = math.log1p(math.fsum(w * np.expm1(delta * log_x)))
    else:
        log_ratio = power_sums(x, lam, p).log_phi - sq.log_phi
    log_mean = log_ratio / delta
    return log_mean, sq.log_phi - q * log_mean


def _canonical(params: GiniParams) -> tuple[float, float]:
    return max(params.p, params.q), min(params.p, params.q)


def gini_mean(params: GiniParams, prof: DecisionProfile) -> float:
    """Weighted Gini mean ``(phi_p / phi_q)^(1/(p-q))``, or ``exp(psi_p/phi_p)`` when ``p = q``.

    >>> from bajra.profiles import make_profile
    >>> round(gini_mean(GiniParams(0, 0), make_profile([1, 4], [1, 1])), 12)
    2.0
    """
    x, lam = _positive_scalar_data(prof)
    p, q = _canonical(params)
    return math.exp(_log_gini(x, lam, p, q)[0])


def gini_effort(params: GiniParams, prof: DecisionProfile) -> float:
    """Gini effort ``phi_q^(p/(p-q)) / phi_p^(q/(p-q))``; ``phi_p exp(-p psi_p/phi_p)`` on the diagonal."""
    x, lam = _positive_scalar_data(prof)
    p, q = _canonical(params)
    return math.exp(_log_gini(x, lam, p, q)[1])


def gini_map(p: float, q: float) -> AdmissibleMap:
    """The generator ``(x^p, x^q)`` on ``(0, inf)`` with a closed-form ray solver.

    For ``|p - q| < 1e-8`` the generator ``(x^m ln x, x^m)`` with
    ``m = (p + q) / 2`` is used instead.
    """
    params = GiniParams(float(p), float(q))
    name = f"gini:{p:g},{q:g}"
    if params.diagonal:
        m = 0.5 * (params.p + params.q)

        def evaluate_many(pts):
            x = pts[:, 0]
            xm = x**m
            return np.column_stack([xm * np.log(x), xm])

        def solver(v):
            if not v[1] > 0:
                raise OutsideCone(f"{name}: second coordinate must be positive")
            log_u = v[0] / v[1]
            return np.array([math.exp(log_u)]), math.exp(math.log(v[1]) - m * log_u)
    else:
        pp, qq = params.p, params.q

        def evaluate_many(pts):
            x = pts[:, 0]
            return np.column_stack([x**pp, x**qq])

        def solver(v):
            if not (v[0] > 0 and v[1] > 0):
                raise OutsideCone(f"{name}: both coordinates must be positive")
            with np.errstate(all="ignore"):
                u = (v[0] / v[1]) ** (1.0 / (pp - qq))
                eta = v[1] / u**qq
            if not (np.isfinite(u) and u >= _TINY and np.isfinite(eta) and eta >= _TINY):
                # direct powers over- or underflow; work with logarithms
                log_u = (math.log(v[0]) - math.log(v[1])) / (pp - qq)
                u, eta = math.exp(log_u), math.exp(math.log(v[1]) - qq * log_u)
            return np.array([float(u)]), float(eta)

    return AdmissibleMap(
        name=name,
        domain=interval(0.0, math.inf),
        range_dim=2,
        evaluate=lambda pt: evaluate_many(np.asarray(pt, dtype=float).reshape(1, 1))[0],
        solver=solver,
        evaluate_many=evaluate_many,
    )


def power_map(p: float) -> AdmissibleMap:
    """Weighted power mean of order ``p`` (geometric mean at ``p = 0``)."""
    fmap = gini_map(p, 0.0)
    return AdmissibleMap(f"power:{p:g}", fmap.domain, 2, fmap.evaluate, fmap.solver, fmap.evaluate_many)


def quasi_arithmetic_map(
    g: Callable,
    a: float = -math.inf,
    b: float = math.inf,
    *,
    name: str | None = None,
) -> AdmissibleMap:
    """Generator ``(g, 1)`` for a strictly monotone ``g`` on ``(a, b)``."""
    return ratio_map(g, lambda x: np.ones_like(np.asarray(x, dtype=float)), a, b,
                     name=name or "quasi")


def hyperboloid_map() -> AdmissibleMap:
    """Parametrisation ``(x, y) -> (x, y, sqrt(1 + x^2 + y^2))`` of the upper sheet.

    With ``r = |(v1, v2)|`` and ``D = v3^2 - r^2 > 0`` the ray through
    ``v`` meets the sheet at ``v / sqrt(D)``, so the mean is
    ``(v1, v2) / sqrt(D)`` and the effort ``sqrt(D)``.
    """

    def evaluate_many(pts):
        x, y = pts[:, 0], pts[:, 1]
        return np.column_stack([x, y, np.sqrt(1.0 + x * x + y * y)])

    def solver(v):
        v1, v2, v3 = (float(c) for c in v)
        r = math.hypot(v1, v2)
        if not v3 > r:
            raise OutsideCone("hyperboloid: vector is not inside the future light cone")
        eta = math.sqrt((v3 - r) * (v3 + r))
        return np.array([v1 / eta, v2 / eta]), eta

    return AdmissibleMap(
        name="hyperboloid",
        domain=box(2),
        range_dim=3,
        evaluate=lambda pt: evaluate_many(np.asarray(pt, dtype=float).reshape(1, 2))[0],
        solver=solver,
        evaluate_many=evaluate_many,
    )
