import math

import numpy as np
import pytest
from scipy.optimize import linprog

from bajra.convexity import (
    HullQuery,
    check_fconvexity,
    fconvex_hull_weights,
    in_fconvex_hull,
    sample_fconvex_hull,
)
from bajra.errors import DomainViolation, ValidationError
from bajra.families import gini_map, hyperboloid_map
from bajra.maps import ratio_map
from bajra.means import aggregate, decisions_close
from bajra.profiles import make_profile

S2 = [(1.0, 0.0), (0.0, 1.0)]
S3 = [(1.0, 0.0), (0.0, 1.0), (-1.0, -0.5)]
MEAN_POINT = (math.sqrt(6) / 6, math.sqrt(6) / 6)


def lp_member(fmap, gens, y):
    """Independent route: exact LP feasibility of eta f(y) = F^T l, sum l = 1, l >= 0."""
    F = fmap.images(np.atleast_2d(np.asarray(gens, dtype=float)).reshape(len(gens), -1))
    fy = fmap(y)
    k, n = F.shape[1], F.shape[0]
    # variables (l_1..l_n, eta)
    A_eq = np.zeros((k + 1, n + 1))
    A_eq[:k, :n] = F.T
    A_eq[:k, n] = -fy
    A_eq[k, :n] = 1.0
    b_eq = np.zeros(k + 1)
    b_eq[k] = 1.0
    res = linprog(np.zeros(n + 1), A_eq=A_eq, b_eq=b_eq, bounds=[(0, None)] * (n + 1), method="highs")
    return res.status == 0


class TestInHull:
    def test_generator_is_member(self):
        f = hyperboloid_map()
        for s in S3:
            cert = fconvex_hull_weights(f, HullQuery.of(S3, s))
            assert cert.member
            assert cert.weights[S3.index(s)] == pytest.approx(1.0, abs=1e-9)

    def test_mean_point_is_member(self):
        f = hyperboloid_map()
        cert = fconvex_hull_weights(f, HullQuery.of(S2, MEAN_POINT))
        assert cert.member
        np.testing.assert_allclose(cert.weights, [0.5, 0.5], atol=1e-9)
        # the weights reproduce the query as a mean
        out = aggregate(f, make_profile(S2, cert.weights))
        assert decisions_close(out.point, MEAN_POINT, 1e-9)

    def test_point_off_the_curve(self):
        f = hyperboloid_map()
        assert not in_fconvex_hull(f, HullQuery.of(S2, (1.0, 1.0)))
        assert not lp_member(f, S2, (1.0, 1.0))

    def test_segment_midpoint_is_not_member(self):
        # the ordinary midpoint lies outside: f-convexity is not convexity
        assert not in_fconvex_hull(hyperboloid_map(), HullQuery.of(S2, (0.5, 0.5)))

    def test_interval_hull(self):
        f = gini_map(2, -1)
        assert in_fconvex_hull(f, HullQuery.of([1.0, 3.0], 2.999))
        assert in_fconvex_hull(f, HullQuery.of([1.0, 3.0], 1.0))
        assert not in_fconvex_hull(f, HullQuery.of([1.0, 3.0], 3.01))
        assert not in_fconvex_hull(f, HullQuery.of([1.0, 3.0], 0.9))

    def test_domain_violation(self):
        with pytest.raises(DomainViolation):
            in_fconvex_hull(gini_map(1, 0), HullQuery.of([1.0, 3.0], -2.0))

    def test_dimension_mismatch(self):
        with pytest.raises(ValidationError):
            HullQuery.of(S2, 1.0)

    def test_agrees_with_lp(self):
        f = hyperboloid_map()
        rng = np.random.default_rng(21)
        for _ in range(200):
            y = tuple(rng.uniform(-1.5, 1.5, 2))
            cert = fconvex_hull_weights(f, HullQuery.of(S3, y))
            if cert.residual > 1e-6 or cert.member:
                assert cert.member == lp_member(f, S3, y)


class TestSampleHull:
    def test_single_generator(self):
        assert sample_fconvex_hull(gini_map(2, 1), [4.2], 20) == pytest.approx([4.2] * 20, rel=1e-14)

    def test_arithmetic_range(self):
        pts = sample_fconvex_hull(gini_map(1, 0), [1.0, 3.0], 300, seed=3)
        assert all(1.0 <= p <= 3.0 for p in pts)

    def test_members(self):
        f = hyperboloid_map()
        for y in sample_fconvex_hull(f, S2, 100, seed=4):
            assert in_fconvex_hull(f, HullQuery.of(S2, y))

    def test_deterministic(self):
        f = hyperboloid_map()
        assert sample_fconvex_hull(f, S3, 10, seed=9) == sample_fconvex_hull(f, S3, 10, seed=9)

    def test_hull_of_hull(self):
        f = hyperboloid_map()
        extra = sample_fconvex_hull(f, S3, 10, seed=5)
        grown = S3 + [tuple(p) for p in extra]
        rng = np.random.default_rng(6)
        for _ in range(150):
            y = tuple(rng.uniform(-1.5, 1.5, 2))
            a = fconvex_hull_weights(f, HullQuery.of(S3, y))
            b = fconvex_hull_weights(f, HullQuery.of(grown, y))
            if min(a.residual, b.residual) > 1e-6 or (a.member and b.member):
                assert a.member == b.member

    def test_routes_agree(self):
        # dense sampling of the hull against the feasibility verdict
        f = hyperboloid_map()
        cloud = np.array(sample_fconvex_hull(f, S3, 4000, seed=1))
        rng = np.random.default_rng(0)
        checked = 0
        for _ in range(60):
            y = rng.uniform(-1.2, 1.2, 2)
            cert = fconvex_hull_weights(f, HullQuery.of(S3, y))
            d = float(np.min(np.linalg.norm(cloud - y, axis=1)))
            if cert.member:
                assert d < 0.05
                checked += 1
            elif cert.residual > 0.02:
                assert d > 0.03
                checked += 1
        assert checked >= 50


class TestCheckFConvexity:
    def test_subinterval_of_ratio_map(self):
        f = ratio_map(lambda x: np.exp(x), lambda x: 1 + x * x, -3.0, 3.0)
        v = check_fconvexity(f, lambda m: -1.0 <= m <= 2.0,
                             lambda rng, n: rng.uniform(-1.0, 2.0, n), trials=200)
        assert v.passed and v.witness is None

    def test_two_points(self):
        f = gini_map(1, 0)
        v = check_fconvexity(f, lambda m: m in (1.0, 3.0), lambda rng, n: rng.choice([1.0, 3.0], n),
                             trials=200)
        assert not v.passed
        assert v.witness_mean not in (1.0, 3.0)
        assert aggregate(f, make_profile([1.0, 3.0], [1, 1])).decision == pytest.approx(2.0)

    def test_whole_domain(self):
        v = check_fconvexity(hyperboloid_map(), lambda m: True,
                             lambda rng, n: [tuple(r) for r in rng.uniform(-5, 5, (n, 2))], trials=100)
        assert v.passed

    def test_intersection_of_hulls(self):
        f = hyperboloid_map()
        T = [(0.5, 0.5), (-0.5, 1.0), (0.5, -1.0)]

        def inside(y):
            return (in_fconvex_hull(f, HullQuery.of(S3, y))
                    and in_fconvex_hull(f, HullQuery.of(T, y)))

        pool = [y for y in sample_fconvex_hull(f, S3, 400, seed=8) if inside(y)]
        assert len(pool) > 10

        def sample(rng, n):
            return [pool[i] for i in rng.integers(len(pool), size=n)]

        v = check_fconvexity(f, inside, sample, trials=100)
        assert v.passed
