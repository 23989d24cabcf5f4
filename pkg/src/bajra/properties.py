"""Randomised checks of the decision-making and effort axioms.

Each check draws seeded random profiles in the map's domain and counts how
often an identity holds within the decision tolerance. The suites back the
``check`` CLI subcommand and the acceptance tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import BajraError
from .maps import AdmissibleMap
from .means import (
    DECISION_RTOL,
    aggregate,
    aggregate_with_delegation,
    check_casuativity,
    decisions_close,
    delegate_matrix,
    efforts_close,
)
from .profiles import DecisionProfile, _from_arrays
from .synergy import random_profile

__all__ = [
    "PropertyResult",
    "axiom_suite",
    "delegation_suite",
    "casuativity_suite",
    "run_property_suite",
    "all_passed",
]


@dataclass
class PropertyResult:
    name: str
    passed: int = 0
    failed: int = 0
    first_failure: str | None = field(default=None, repr=False)

    def record(self, ok: bool, detail: Callable[[], str]) -> None:
        if ok:
            self.passed += 1
            return
        self.failed += 1
        if self.first_failure is None:
            self.first_failure = detail()

    @property
    def ok(self) -> bool:
        return self.failed == 0


def all_passed(results: list[PropertyResult]) -> bool:
    return all(r.ok for r in results)


def _same(a, b, rtol: float) -> bool:
    return decisions_close(a.point, b.point, rtol) and efforts_close(a.effort, b.effort, rtol)


def _profile(x: np.ndarray, w: np.ndarray, fmap: AdmissibleMap) -> DecisionProfile:
    return _from_arrays(np.atleast_2d(x), np.asarray(w, dtype=float), fmap.dim == 1)


def _safe(check: Callable[[], bool]) -> bool:
    try:
        return bool(check())
    except BajraError:
        return False


def axiom_suite(fmap: AdmissibleMap, trials: int = 500, *, seed: int = 42,
                rtol: float = DECISION_RTOL) -> list[PropertyResult]:
    """Reflexivity, (null)homogeneity, symmetry, elimination and reduction."""
    rng = np.random.default_rng(seed)
    names = ["reflexivity", "reflexivity (effort)", "nullhomogeneity", "homogeneity (effort)",
             "symmetry", "elimination", "reduction"]
    res = {n: PropertyResult(n) for n in names}
    for _ in range(trials):
        p = random_profile(fmap, rng, n_min=1, n_max=6)
        base = aggregate(fmap, p)

        y = fmap.domain.sample(rng, 1)
        lam = float(rng.uniform(0.01, 10.0))
        single = aggregate(fmap, _profile(y, [lam], fmap))
        res["reflexivity"].record(decisions_close(single.point, y[0], rtol),
                                  lambda: f"B({y[0]}, {lam}) = {single.point}")
        res["reflexivity (effort)"].record(efforts_close(single.effort, lam, rtol),
                                           lambda: f"beta({y[0]}, {lam}) = {single.effort}")

        t = float(math.exp(rng.uniform(math.log(0.01), math.log(100.0))))
        scaled = aggregate(fmap, _profile(p.decisions, t * p.weights, fmap))
        res["nullhomogeneity"].record(decisions_close(scaled.point, base.point, rtol),
                                      lambda: f"{p!r}, t={t}")
        res["homogeneity (effort)"].record(efforts_close(scaled.effort, t * base.effort, rtol),
                                           lambda: f"{p!r}, t={t}")

        perm = rng.permutation(p.n)
        permuted = aggregate(fmap, _profile(p.decisions[perm], p.weights[perm], fmap))
        res["symmetry"].record(_same(permuted, base, rtol), lambda: f"{p!r}, perm={perm.tolist()}")

        k = int(rng.integers(p.n + 1))
        z = fmap.domain.sample(rng, 1)
        x_el = np.insert(p.decisions, k, z[0], axis=0)
        w_el = np.insert(p.weights, k, 0.0)
        res["elimination"].record(_same(aggregate(fmap, _profile(x_el, w_el, fmap)), base, rtol),
                                  lambda: f"{p!r}, zero entry {z[0]} at {k}")

        i = int(rng.integers(p.n))
        share = float(rng.uniform(0.05, 0.95))
        x_red = np.insert(p.decisions, i, p.decisions[i], axis=0)
        w_red = np.insert(p.weights, i, share * p.weights[i])
        w_red[i + 1] = (1.0 - share) * p.weights[i]
        res["reduction"].record(_same(aggregate(fmap, _profile(x_red, w_red, fmap)), base, rtol),
                                lambda: f"{p!r}, split entry {i}")
    return list(res.values())


def delegation_suite(fmap: AdmissibleMap, trials: int = 200, *, seed: int = 43,
                     rtol: float = DECISION_RTOL) -> list[PropertyResult]:
    """Delegation of a subgroup, the associated pair, and matrix delegation."""
    rng = np.random.default_rng(seed)
    deleg = PropertyResult("delegation")
    grouped = PropertyResult("grouped delegation")
    assoc = PropertyResult("associated pair")
    matrix = PropertyResult("matrix delegation")
    for _ in range(trials):
        p = random_profile(fmap, rng, n_min=1, n_max=4)
        q = random_profile(fmap, rng, n_min=1, n_max=4)
        flat = aggregate(fmap, _profile(np.vstack([p.decisions, q.decisions]),
                                        np.concatenate([p.weights, q.weights]), fmap))
        rep = aggregate(fmap, q)
        swapped_in = _profile(np.vstack([p.decisions, rep.point]),
                              np.append(p.weights, rep.effort), fmap)
        deleg.record(_same(aggregate(fmap, swapped_in), flat, rtol), lambda: f"{p!r} + {q!r}")

        groups = [p, q, random_profile(fmap, rng, n_min=1, n_max=3)]
        all_x = np.vstack([g.decisions for g in groups])
        all_w = np.concatenate([g.weights for g in groups])
        grouped.record(_same(aggregate_with_delegation(fmap, groups),
                             aggregate(fmap, _profile(all_x, all_w, fmap)), rtol),
                       lambda: f"groups {groups!r}")

        # any other effort attached to the representative must change some outcome
        factor = float(rng.choice([-1.0, 1.0]) * rng.uniform(0.2, 0.8)) + 1.0
        changed = False
        for _probe in range(3):
            r = random_profile(fmap, rng, n_min=1, n_max=3)
            good = aggregate(fmap, _profile(np.vstack([r.decisions, rep.point]),
                                            np.append(r.weights, rep.effort), fmap))
            bad = aggregate(fmap, _profile(np.vstack([r.decisions, rep.point]),
                                           np.append(r.weights, factor * rep.effort), fmap))
            if not decisions_close(good.point, bad.point, 1e3 * rtol):
                changed = True
                break
        assoc.record(changed, lambda: f"{q!r} with effort factor {factor}")

        n = int(rng.integers(1, 5))
        m = int(rng.integers(1, 4))
        x = fmap.domain.sample(rng, n)
        L = rng.uniform(0.0, 1.0, (n, m)) * (rng.uniform(size=(n, m)) > 0.3)
        L[rng.integers(n, size=m), np.arange(m)] += 0.1
        t = rng.uniform(0.0, 1.0, m)
        t[int(rng.integers(m))] += 0.1
        pts = [float(v[0]) for v in x] if fmap.dim == 1 else [tuple(v) for v in x]
        matrix.record(_safe(lambda: delegate_matrix(fmap, pts, L, t, rtol=rtol) is not None),
                      lambda: f"x={x.tolist()}, L={L.tolist()}, t={t.tolist()}")
    return [deleg, grouped, assoc, matrix]


def casuativity_suite(fmap: AdmissibleMap, trials: int = 200, *, seed: int = 44,
                      rtol: float = DECISION_RTOL) -> list[PropertyResult]:
    """Casuativity on random additions and two-point strictness."""
    rng = np.random.default_rng(seed)
    casu = PropertyResult("casuativity")
    strict = PropertyResult("two-point strictness")
    for trial in range(trials):
        p = random_profile(fmap, rng, n_min=1, n_max=5)
        mu = float(rng.uniform(0.1, 2.0))
        if trial % 2 == 0:
            y = aggregate(fmap, p).point
        else:
            y = fmap.domain.sample(rng, 1)[0]
        report = check_casuativity(fmap, p, y, mu, rtol=rtol)
        casu.record(report.consistent, lambda: f"{p!r}, y={y}, mu={mu}: {report}")

        while True:
            ends = fmap.domain.sample(rng, 2)
            gap = np.max(np.abs(ends[0] - ends[1]))
            if gap >= 0.05 * max(np.max(np.abs(ends)), 1.0):
                break
        w = rng.uniform(0.1, 1.0, 2)
        m = aggregate(fmap, _profile(ends, w, fmap)).point
        strict.record(not decisions_close(m, ends[0], rtol) and not decisions_close(m, ends[1], rtol),
                      lambda: f"ends={ends.tolist()}, w={w.tolist()}, mean={m}")
    return [casu, strict]


def run_property_suite(fmap: AdmissibleMap, trials: int = 200, *, seed: int = 42,
                       rtol: float = DECISION_RTOL) -> list[PropertyResult]:
    return (axiom_suite(fmap, trials, seed=seed, rtol=rtol)
            + delegation_suite(fmap, trials, seed=seed + 1, rtol=rtol)
            + casuativity_suite(fmap, trials, seed=seed + 2, rtol=rtol))
