"""Synergy of effort functions and the threshold coalition game.

The synergy of an effort function ``E`` at ``(x, l)`` is ``E(x, l) - sum l``:
how much more (or less) effort the group is worth than its members counted
separately.
"""

from __future__ import annotations

import itertools
import string
from dataclasses import dataclass
from numbers import Real
from typing import Callable, Sequence

import numpy as np

from .errors import ConstantDecisions, NumericError, TooFewParties, ValidationError
from .families import GiniParams, gini_effort
from .maps import AdmissibleMap, ray_solve
from .means import DECISION_RTOL, aggregate, decisions_close, image_sum
from .profiles import DecisionProfile, _from_arrays, normalize_profile

__all__ = [
    "synergy",
    "gini_synergy_sign",
    "NullSynergyReport",
    "check_null_synergy",
    "random_profile",
    "CoalitionGame",
    "SynergyReport",
    "coalition_label",
    "coalition_table",
    "stable_coalitions",
    "zero_synergy_pairs",
]

SIGN_ZERO_BAND = 1e-8

EffortLike = AdmissibleMap | Callable[[DecisionProfile], float]


def synergy(effort: EffortLike, p: DecisionProfile) -> float:
    """``E(x, l) - sum(l)``; ``effort`` is a generator or any effort callable."""
    if isinstance(effort, AdmissibleMap):
        value = aggregate(effort, p).effort
    else:
        value = float(effort(p))
    return value - p.total_weight()


def gini_synergy_sign(params: GiniParams, p: DecisionProfile, *, zero_band: float = SIGN_ZERO_BAND) -> int:
    """Sign of the Gini-effort synergy, with ``|sigma| <= zero_band`` read as 0.

    For nonconstant positive decisions this equals ``-sign(p*q)``.
    """
    prof = normalize_profile(p)
    if prof.n < 2:
        raise ConstantDecisions("the sign law needs at least two distinct decisions")
    sigma = gini_effort(params, prof) - prof.total_weight()
    if abs(sigma) <= zero_band:
        return 0
    return 1 if sigma > 0 else -1


def random_profile(
    fmap: AdmissibleMap,
    rng: np.random.Generator,
    n_min: int = 2,
    n_max: int = 6,
    w_low: float = 0.1,
    w_high: float = 1.0,
) -> DecisionProfile:
    """Random profile in the map's domain with weights uniform on ``[w_low, w_high]``."""
    n = int(rng.integers(n_min, n_max + 1))
    x = fmap.domain.sample(rng, n)
    w = rng.uniform(w_low, w_high, n)
    return _from_arrays(x, w, fmap.dim == 1)


@dataclass(frozen=True)
class NullSynergyReport:
    zero_synergy: bool
    associative: bool
    flat_formula_matches: bool
    trials: int

    @property
    def coincide(self) -> bool:
        return self.zero_synergy == self.associative == self.flat_formula_matches


def check_null_synergy(
    fmap: AdmissibleMap,
    trials: int = 300,
    *,
    seed: int = 42,
    tol: float = DECISION_RTOL,
) -> NullSynergyReport:
    """Probe the three equivalent null-synergy conditions on random profiles.

    * zero synergy: ``beta(x, l) = sum l``;
    * associativity: ``B((x, y), (l, m)) = B((B(x, l), y), (sum l, m))``;
    * flat formula: ``sum l f(x) / sum l`` lies on the image itself, so the
      mean is ``f^-1`` of the normalised image sum.
    """
    rng = np.random.default_rng(seed)
    zero = assoc = flat = True
    for _ in range(trials):
        p = random_profile(fmap, rng)
        q = random_profile(fmap, rng, n_min=1, n_max=3)
        out = aggregate(fmap, p)
        total = p.total_weight()
        if abs(out.effort - total) > tol * total:
            zero = False
        joined = _from_arrays(np.vstack([p.decisions, q.decisions]),
                              np.concatenate([p.weights, q.weights]), p.scalar)
        nested = _from_arrays(np.vstack([out.point, q.decisions]),
                              np.concatenate([[total], q.weights]), p.scalar)
        if not decisions_close(aggregate(fmap, joined).point, aggregate(fmap, nested).point, tol):
            assoc = False
        try:
            u, eta = ray_solve(fmap, image_sum(fmap, p) / total)
            if abs(eta - 1.0) > tol or not decisions_close(u, out.point, tol):
                flat = False
        except NumericError:
            flat = False
    return NullSynergyReport(zero, assoc, flat, trials)


@dataclass(frozen=True)
class CoalitionGame:
    """Parties with vote counts; a coalition reaching ``quota`` is worth ``total``."""

    party_weights: tuple[Real, ...]
    quota: Real = 51
    total: Real = 100

    def __post_init__(self):
        weights = tuple(self.party_weights)
        object.__setattr__(self, "party_weights", weights)
        if not weights or any(not w > 0 for w in weights):
            raise ValidationError("party weights must be positive")
        if sum(weights) != self.total:
            raise ValidationError(f"party weights sum to {sum(weights)}, expected total {self.total}")
        if not 0 < self.quota <= self.total:
            raise ValidationError("quota must lie in (0, total]")

    @property
    def n(self) -> int:
        return len(self.party_weights)

    def threshold_effort(self, coalition: Sequence[int]) -> Real:
        s = sum(self.party_weights[i] for i in coalition)
        return self.total if s >= self.quota else s

    def synergy(self, coalition: Sequence[int]) -> Real:
        return self.threshold_effort(coalition) - sum(self.threshold_effort((i,)) for i in coalition)


@dataclass(frozen=True)
class SynergyReport:
    coalition: tuple[int, ...]
    threshold_effort: Real
    sum_individual: Real
    synergy: Real

    @property
    def label(self) -> str:
        return coalition_label(self.coalition)


def coalition_label(coalition: Sequence[int]) -> str:
    """Parties are lettered A, B, C, ... in input order."""
    letters = string.ascii_uppercase
    return "".join(letters[i] if i < 26 else f"P{i + 1}" for i in coalition)


def coalition_table(game: CoalitionGame) -> list[SynergyReport]:
    """Synergy of every coalition with at least two members."""
    rows = []
    for size in range(2, game.n + 1):
        for c in itertools.combinations(range(game.n), size):
            individual = sum(game.threshold_effort((i,)) for i in c)
            effort = game.threshold_effort(c)
            rows.append(SynergyReport(c, effort, individual, effort - individual))
    return rows


def stable_coalitions(game: CoalitionGame, *, strict: bool = False) -> list[tuple[int, int]]:
    """Pairs that both members prefer to every alternative.

    A member of ``{i, j}`` compares its synergy with each other pair it
    could join and with staying alone (synergy 0). Under weak preference
    ties are acceptable; under strict preference they are not.
    """
    if game.n < 3:
        raise TooFewParties("stability needs at least three parties")
    s = {c: game.synergy(c) for c in itertools.combinations(range(game.n), 2)}

    def better(a, b) -> bool:
        return a > b if strict else a >= b

    stable = []
    for (i, j), value in s.items():
        if not better(value, 0):
            continue
        ok = True
        for member in (i, j):
            for k in range(game.n):
                if k in (i, j):
                    continue
                alt = s[tuple(sorted((member, k)))]
                if not better(value, alt):
                    ok = False
        if ok:
            stable.append((i, j))
    return stable


def zero_synergy_pairs(game: CoalitionGame) -> list[tuple[int, int]]:
    return [c for c in itertools.combinations(range(game.n), 2) if game.synergy(c) == 0]
