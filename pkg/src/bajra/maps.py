"""Admissible generators and ray solving.

An admissible map ``f: D -> R^k`` is injective, its image meets every ray
from the origin at most once, and the cone over the image is convex with the
origin outside the convex hull. Every mean in this package is computed by
pushing a weighted sum of images back along its ray: ``ray_solve(v)`` returns
the unique ``(u, eta)`` with ``eta * f(u) = v``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import (
    ConvergenceFailure,
    DomainViolation,
    MismatchedShapes,
    NonMonotoneRatio,
    OutsideCone,
    RootNotBracketed,
    WrongDimension,
    ZeroCrossingInF2,
)

__all__ = [
    "Domain",
    "interval",
    "box",
    "AdmissibleMap",
    "AdmissibilityCertificate",
    "ray_solve",
    "ratio_map",
    "linear_transform",
    "invert_monotone",
    "check_admissibility_2d",
    "RAY_RESIDUAL_TOL",
]

RAY_RESIDUAL_TOL = 1e-10
ROOT_MAXITER = 200
MONOTONE_SAMPLES = 512
MONOTONE_TOL = 1e-12
DEFAULT_GRID = 256

@dataclass(frozen=True)
class Domain:
    """Open box ``prod_i (lower_i, upper_i)``; bounds may be infinite."""

    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def __post_init__(self):
        if len(self.lower) != len(self.upper) or not self.lower:
            raise MismatchedShapes("domain bounds must have equal, nonzero length")
        for a, b in zip(self.lower, self.upper):
            if not a < b:
                raise MismatchedShapes(f"empty domain interval ({a}, {b})")

    @property
    def dim(self) -> int:
        return len(self.lower)

    def contains(self, point) -> bool:
        pt = np.asarray(point, dtype=float).ravel()
        if pt.shape[0] != self.dim or not np.all(np.isfinite(pt)):
            return False
        return bool(np.all(pt > np.asarray(self.lower)) and np.all(pt < np.asarray(self.upper)))

    def check(self, points: np.ndarray) -> None:
        """Raise :class:`DomainViolation` unless every row lies in the domain."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if pts.shape[1] != self.dim:
            raise DomainViolation(f"points have dimension {pts.shape[1]}, domain has {self.dim}")
        lo, hi = np.asarray(self.lower), np.asarray(self.upper)
        bad = ~(np.isfinite(pts).all(axis=1) & (pts > lo).all(axis=1) & (pts < hi).all(axis=1))
        if bad.any():
            raise DomainViolation(f"decision {pts[bad][0].tolist()} outside domain {self}")

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """Random interior points, shape ``(n, dim)``.

        Half-lines are sampled log-uniformly at distance 0.1..10 from the
        finite end, the full line uniformly on [-3, 3].
        """
        cols = []
        for a, b in zip(self.lower, self.upper):
            if math.isfinite(a) and math.isfinite(b):
                width = b - a
                cols.append(rng.uniform(a + 1e-3 * width, b - 1e-3 * width, n))
            elif math.isfinite(a):
                cols.append(a + np.exp(rng.uniform(math.log(0.1), math.log(10.0), n)))
            elif math.isfinite(b):
                cols.append(b - np.exp(rng.uniform(math.log(0.1), math.log(10.0), n)))
            else:
                cols.append(rng.uniform(-3.0, 3.0, n))
        return np.column_stack(cols)

    def grid(self, n: int = DEFAULT_GRID) -> np.ndarray:
        """Deterministic increasing grid for one-dimensional domains."""
        if self.dim != 1:
            raise WrongDimension("grids are only defined for interval domains")
        a, b = self.lower[0], self.upper[0]
        k = np.arange(1, n + 1) / (n + 1)
        if math.isfinite(a) and math.isfinite(b):
            return a + (b - a) * k
        t = np.linspace(-math.log(1e3), math.log(1e3), n)
        if math.isfinite(a):
            return a + np.exp(t)
        if math.isfinite(b):
            return b - np.exp(-t)
        return np.linspace(-1e3, 1e3, n)

    def __str__(self) -> str:
        parts = [f"({a:g}, {b:g})" for a, b in zip(self.lower, self.upper)]
        return " x ".join(parts)


def interval(a: float = -math.inf, b: float = math.inf) -> Domain:
    return Domain((float(a),), (float(b),))


def box(dim: int) -> Domain:
    return Domain((-math.inf,) * dim, (math.inf,) * dim)


@dataclass(frozen=True)
class AdmissibleMap:
    """A generator ``f`` bundled with its domain and ray solver.

    ``evaluate`` takes a length-``domain.dim`` array and returns a
    length-``range_dim`` array. ``solver`` takes a length-``range_dim``
    vector in the cone over the image and returns ``(u, eta)``. Use the
    module-level :func:`ray_solve` to get input checks and the residual
    guarantee.
    """

    name: str
    domain: Domain
    range_dim: int
    evaluate: Callable[[np.ndarray], np.ndarray]
    solver: Callable[[np.ndarray], tuple[np.ndarray, float]]
    evaluate_many: Callable[[np.ndarray], np.ndarray] | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return self.domain.dim

    def images(self, points: np.ndarray) -> np.ndarray:
        """Evaluate on the rows of ``points``; returns shape ``(n, range_dim)``."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if self.evaluate_many is not None:
            return np.asarray(self.evaluate_many(pts), dtype=float).reshape(pts.shape[0], self.range_dim)
        return np.vstack([np.asarray(self.evaluate(row), dtype=float) for row in pts])

    def __call__(self, point) -> np.ndarray:
        return np.asarray(self.evaluate(np.atleast_1d(np.asarray(point, dtype=float))), dtype=float)


@dataclass(frozen=True)
class AdmissibilityCertificate:
    """Outcome of the pairwise determinant test on a finite grid.

    ``pass`` and ``fail`` are statements about the sampled grid only. A pass
    with ``sign_changes`` set means every sampled pair spans distinct rays
    but the orientation flips somewhere, which a continuous admissible map
    on an interval cannot do between grid points. ``inconclusive`` means the
    map could not be evaluated at some grid point.
    """

    verdict: str
    witness: tuple[float, float] | None
    samples_used: int
    min_abs_det: float
    sign_changes: bool


def ray_solve(fmap: AdmissibleMap, v, *, tol: float = RAY_RESIDUAL_TOL) -> tuple[np.ndarray, float]:
    """Return ``(u, eta)`` with ``eta * f(u) = v`` and ``eta > 0``.

    Raises :class:`OutsideCone` if ``v`` is not on a ray through the image
    and :class:`ConvergenceFailure` if the solver's answer misses ``v`` by
    more than ``tol * |v|``.
    """
    vec = np.asarray(v, dtype=float).ravel()
    if vec.shape[0] != fmap.range_dim:
        raise WrongDimension(f"{fmap.name} expects vectors of length {fmap.range_dim}")
    if not np.all(np.isfinite(vec)) or not np.any(vec):
        raise OutsideCone(f"{vec.tolist()} is not in the cone over the image of {fmap.name}")
    u, eta = fmap.solver(vec)
    u = np.atleast_1d(np.asarray(u, dtype=float))
    if not (math.isfinite(eta) and eta > 0) or not fmap.domain.contains(u):
        raise OutsideCone(f"{vec.tolist()} is not in the cone over the image of {fmap.name}")
    resid = np.linalg.norm(eta * fmap(u) - vec)
    if not resid <= tol * np.linalg.norm(vec):
        raise ConvergenceFailure(
            f"ray solve for {fmap.name} left residual {resid:.3e} at v={vec.tolist()}"
        )
    return u, float(eta)


def _param_to_x(a: float, b: float) -> Callable[[float], float]:
    # bijection R -> (a, b) used only to search for a bracket
    if math.isfinite(a) and math.isfinite(b):
        return lambda t: a + (b - a) / (1.0 + math.exp(-t)) if t > -700 else a
    if math.isfinite(a):
        return lambda t: a + math.exp(min(t, 700.0))
    if math.isfinite(b):
        return lambda t: b - math.exp(min(-t, 700.0))
    return lambda t: math.copysign(math.expm1(min(abs(t), 700.0)), t)


def invert_monotone(
    fn: Callable[[float], float],
    target: float,
    a: float,
    b: float,
    increasing: bool,
    *,
    start: float | None = None,
) -> float:
    """Solve ``fn(x) = target`` for strictly monotone ``fn`` on ``(a, b)``.

    A bracket is found by doubling outward from ``start`` in a parametrisation
    of the open interval, then Brent's method refines it.
    """
    to_x = _param_to_x(a, b)

    def h(x: float) -> float:
        return fn(x) - target

    if start is None:
        x0 = to_x(0.0)
    else:
        x0 = start
    h0 = h(x0)
    if h0 == 0:
        return x0
    if not math.isfinite(h0):
        raise RootNotBracketed(f"ratio is not finite at the starting point {x0}")
    # step right when the root lies above x0
    direction = 1.0 if (h0 < 0) == increasing else -1.0
    t_of_x0 = _x_to_param(x0, a, b)
    prev_x, prev_h = x0, h0
    step = 1.0
    for _ in range(64):
        x = to_x(t_of_x0 + direction * step)
        if x == prev_x or not (a < x < b):
            break
        hx = h(x)
        if not math.isfinite(hx):
            break
        if hx == 0:
            return x
        if (hx > 0) != (prev_h > 0):
            lo, hi = (prev_x, x) if prev_x < x else (x, prev_x)
            try:
                xtol = 1e-15 * max(abs(lo), abs(hi))
                return brentq(h, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps,
                              maxiter=ROOT_MAXITER)
            except RuntimeError as exc:
                raise ConvergenceFailure(str(exc)) from exc
        prev_x, prev_h = x, hx
        step *= 2.0
    raise RootNotBracketed(f"target {target!r} is outside the range of the ratio on ({a}, {b})")


def _x_to_param(x: float, a: float, b: float) -> float:
    if math.isfinite(a) and math.isfinite(b):
        s = (x - a) / (b - a)
        return math.log(s) - math.log1p(-s)
    if math.isfinite(a):
        return math.log(x - a)
    if math.isfinite(b):
        return -math.log(b - x)
    return math.copysign(math.log1p(abs(x)), x)


def _sample_interval(a: float, b: float, n: int) -> np.ndarray:
    if math.isfinite(a) and math.isfinite(b):
        return a + (b - a) * np.arange(1, n + 1) / (n + 1)
    t = np.linspace(-8.0, 8.0, n)
    if math.isfinite(a):
        return a + np.exp(t)
    if math.isfinite(b):
        return b - np.exp(-t)
    return np.sinh(t)


def _vectorize(fn: Callable) -> Callable[[np.ndarray], np.ndarray]:
    def wrapped(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        with np.errstate(all="ignore"):
            try:
                out = np.asarray(fn(x), dtype=float)
                if out.shape == x.shape:
                    return out
                if out.ndim == 0:
                    return np.full(x.shape, float(out))
            except (TypeError, ValueError):
                pass
            return np.array([float(fn(float(t))) for t in x.ravel()]).reshape(x.shape)

    return wrapped


def ratio_map(
    f1: Callable,
    f2: Callable,
    a: float = -math.inf,
    b: float = math.inf,
    *,
    name: str | None = None,
) -> AdmissibleMap:
    """Planar generator ``x -> (f1(x), f2(x))`` on the open interval ``(a, b)``.

    ``f2`` must keep one sign and ``f1/f2`` must be strictly monotone; both
    are checked on 512 sample points. The resulting mean is
    ``(f1/f2)^-1(sum l f1 / sum l f2)`` with effort ``sum l f2 / f2(mean)``.
    """
    g1, g2 = _vectorize(f1), _vectorize(f2)
    xs = _sample_interval(a, b, MONOTONE_SAMPLES)
    y1, y2 = g1(xs), g2(xs)
    ok = np.isfinite(y1) & np.isfinite(y2)
    if ok.sum() < 2:
        raise ZeroCrossingInF2("f1 and f2 are not finite on the sampled interval")
    xs, y1, y2 = xs[ok], y1[ok], y2[ok]
    if np.any(y2 == 0) or (np.any(y2 > 0) and np.any(y2 < 0)):
        raise ZeroCrossingInF2("f2 vanishes or changes sign on the interval")
    r = y1 / y2
    d = np.diff(r)
    scale = MONOTONE_TOL * np.maximum(np.abs(r[1:]), np.abs(r[:-1]))
    if np.all(d > scale):
        increasing = True
    elif np.all(d < -scale):
        increasing = False
    else:
        raise NonMonotoneRatio("f1/f2 is not strictly monotone on the interval")
    start = float(xs[len(xs) // 2])

    def ratio(x: float) -> float:
        with np.errstate(all="ignore"):
            return float(g1(np.array(x)) / g2(np.array(x)))

    def evaluate(pt: np.ndarray) -> np.ndarray:
        x = np.asarray(pt, dtype=float).reshape(1)
        return np.array([g1(x)[0], g2(x)[0]])

    def evaluate_many(pts: np.ndarray) -> np.ndarray:
        x = pts[:, 0]
        return np.column_stack([g1(x), g2(x)])

    def solver(v: np.ndarray) -> tuple[np.ndarray, float]:
        v1, v2 = float(v[0]), float(v[1])
        if v2 == 0:
            raise OutsideCone("second coordinate is zero; no ray through the image")
        u = invert_monotone(ratio, v1 / v2, a, b, increasing, start=start)
        eta = v2 / float(g2(np.array(u)))
        return np.array([u]), eta

    return AdmissibleMap(
        name=name or "ratio",
        domain=interval(a, b),
        range_dim=2,
        evaluate=evaluate,
        solver=solver,
        evaluate_many=evaluate_many,
    )


def linear_transform(fmap: AdmissibleMap, matrix, *, name: str | None = None) -> AdmissibleMap:
    """The generator ``A o f`` for a matrix ``A`` of full column rank.

    Its mean coincides with that of ``f``; rays are pulled back through the
    least-squares inverse of ``A`` and solved by ``f``'s own solver.
    """
    A = np.asarray(matrix, dtype=float)
    if A.ndim != 2 or A.shape[1] != fmap.range_dim:
        raise MismatchedShapes(f"matrix must have {fmap.range_dim} columns")
    if np.linalg.matrix_rank(A) < fmap.range_dim:
        raise MismatchedShapes("matrix must be injective (full column rank)")
    A = A.copy()
    A.setflags(write=False)

    def solver(v: np.ndarray):
        w, *_ = np.linalg.lstsq(A, v, rcond=None)
        if np.linalg.norm(A @ w - v) > 1e-12 * max(np.linalg.norm(v), 1.0):
            raise OutsideCone("vector is not in the range of the linear map")
        return fmap.solver(w)

    inner_many = fmap.evaluate_many

    return AdmissibleMap(
        name=name or f"linear({fmap.name})",
        domain=fmap.domain,
        range_dim=A.shape[0],
        evaluate=lambda pt: A @ np.asarray(fmap.evaluate(pt), dtype=float),
        solver=solver,
        evaluate_many=(lambda pts: inner_many(pts) @ A.T) if inner_many else None,
    )


def check_admissibility_2d(
    f: AdmissibleMap | Callable,
    grid: Sequence[float] | None = None,
    *,
    tol: float = 1e-12,
    n_grid: int = DEFAULT_GRID,
) -> AdmissibilityCertificate:
    """Pairwise determinant test for a planar generator on a finite grid.

    For every pair ``x < y`` of grid points the normalised determinant
    ``det[f(x) f(y)] / (|f(x)| |f(y)|)`` is computed. Any value with
    magnitude at most ``tol`` fails the map with that pair as witness;
    otherwise the grid passes.
    """
    if isinstance(f, AdmissibleMap):
        if f.range_dim != 2 or f.dim != 1:
            raise WrongDimension("the determinant test needs a map from an interval to R^2")
        pts = f.domain.grid(n_grid) if grid is None else np.asarray(grid, dtype=float)
    elif grid is None:
        raise WrongDimension("a grid is required when certifying a bare function")
    else:
        pts = np.asarray(grid, dtype=float)
    pts = np.unique(pts.ravel())
    if pts.shape[0] < 2:
        raise WrongDimension("the grid needs at least two distinct points")
    if isinstance(f, AdmissibleMap):
        images = f.images(pts.reshape(-1, 1))
    else:
        images = np.array([np.asarray(f(x), dtype=float).ravel() for x in pts])
        if images.ndim != 2 or images.shape[1] != 2:
            raise WrongDimension("the determinant test needs a map into R^2")
    if not np.all(np.isfinite(images)):
        return AdmissibilityCertificate("inconclusive", None, int(pts.shape[0]), math.nan, False)
    norms = np.linalg.norm(images, axis=1)
    i, j = np.triu_indices(pts.shape[0], k=1)
    det = images[i, 0] * images[j, 1] - images[j, 0] * images[i, 1]
    with np.errstate(all="ignore"):
        normed = det / (norms[i] * norms[j])
    normed = np.where(np.isfinite(normed), normed, 0.0)
    absdet = np.abs(normed)
    k = int(np.argmin(absdet))
    min_abs = float(absdet[k])
    sign_changes = bool(np.any(normed > 0) and np.any(normed < 0))
    if min_abs <= tol:
        return AdmissibilityCertificate("fail", (float(pts[i[k]]), float(pts[j[k]])),
                                        int(pts.shape[0]), min_abs, sign_changes)
    return AdmissibilityCertificate("pass", None, int(pts.shape[0]), min_abs, sign_changes)
