import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bajra.errors import (
    NonMonotoneRatio,
    OutsideCone,
    RootNotBracketed,
    WrongDimension,
    ZeroCrossingInF2,
)
from bajra.families import gini_map, hyperboloid_map, quasi_arithmetic_map
from bajra.maps import (
    check_admissibility_2d,
    interval,
    invert_monotone,
    linear_transform,
    ratio_map,
    ray_solve,
)

SQRT6 = math.sqrt(6.0)


def arithmetic():
    return ratio_map(lambda x: x, lambda x: 1.0, 0.0, math.inf, name="arith")


def _solve(fmap, v):
    u, eta = ray_solve(fmap, v)
    return u.tolist(), eta


class TestRatioMap:
    def test_arithmetic_ray(self):
        u, eta = _solve(arithmetic(), [3.0, 2.0])
        assert u == [1.5] and eta == 2.0

    def test_arithmetic_on_real_line(self):
        f = ratio_map(lambda x: x, lambda x: 1.0)
        u, eta = _solve(f, [7.0, 2.0])
        assert u == [3.5] and eta == 2.0

    def test_gini_one_minus_one(self):
        f = ratio_map(lambda x: x, lambda x: 1.0 / x, 0.0, math.inf)
        v = f(1.0) + f(2.0)
        assert v.tolist() == [3.0, 1.5]
        u, eta = _solve(f, v)
        # u^2 = v1 / v2 and eta = v2 * u
        assert u[0] == pytest.approx(math.sqrt(2.0), rel=1e-12)
        assert eta == pytest.approx(math.sqrt(4.5), rel=1e-12)
        assert eta == pytest.approx(2.1213203, abs=1e-7)

    def test_equal_components_rejected(self):
        with pytest.raises(NonMonotoneRatio):
            ratio_map(lambda x: x * x + 1, lambda x: x * x + 1, -1.0, 1.0)

    def test_non_monotone_rejected(self):
        with pytest.raises(NonMonotoneRatio):
            ratio_map(lambda x: x * x, lambda x: 1.0, -1.0, 1.0)

    def test_zero_crossing_rejected(self):
        with pytest.raises(ZeroCrossingInF2):
            ratio_map(lambda x: 1.0, lambda x: x, -1.0, 1.0)

    def test_outside_range(self):
        f = ratio_map(lambda x: x, lambda x: 1.0, 0.0, 1.0)
        with pytest.raises(RootNotBracketed):
            ray_solve(f, [3.0, 1.0])
        with pytest.raises(OutsideCone):
            ray_solve(f, [0.5, -1.0])

    def test_decreasing_ratio(self):
        f = ratio_map(lambda x: 1.0, lambda x: x, 0.0, math.inf)
        u, eta = _solve(f, f(2.0) + f(6.0))
        # v = (2, 8): 1/u = 2/8 and eta = 8/u
        assert u[0] == pytest.approx(4.0, rel=1e-12)
        assert eta == pytest.approx(2.0, rel=1e-12)

    def test_matches_closed_form_two_points(self):
        rng = np.random.default_rng(3)
        f = ratio_map(lambda x: x ** 3, lambda x: x, 0.0, math.inf)
        for _ in range(100):
            x1, x2 = rng.uniform(0.1, 10, 2)
            l1, l2 = rng.uniform(0.1, 2, 2)
            u, eta = ray_solve(f, l1 * f(x1) + l2 * f(x2))
            mean = math.sqrt((l1 * x1 ** 3 + l2 * x2 ** 3) / (l1 * x1 + l2 * x2))
            assert u[0] == pytest.approx(mean, rel=1e-9)
            assert eta == pytest.approx((l1 * x1 + l2 * x2) / mean, rel=1e-9)


class TestRaySolve:
    def test_hyperboloid_mean_point(self):
        f = hyperboloid_map()
        v = f((1.0, 0.0)) + f((0.0, 1.0))
        np.testing.assert_allclose(v, [1.0, 1.0, 2.0 * math.sqrt(2.0)], rtol=1e-15)
        u, eta = ray_solve(f, v)
        np.testing.assert_allclose(u, [SQRT6 / 6, SQRT6 / 6], atol=1e-12)
        assert eta == pytest.approx(SQRT6, abs=1e-12)

    @pytest.mark.parametrize("fmap, x0", [
        (gini_map(2, -1), 1.7),
        (hyperboloid_map(), (0.3, -2.0)),
        (quasi_arithmetic_map(np.log, 0.0, math.inf), 5.0),
    ])
    def test_scaled_image_point(self, fmap, x0):
        u, eta = ray_solve(fmap, 3.0 * fmap(x0))
        np.testing.assert_allclose(u, np.atleast_1d(x0), rtol=1e-12)
        assert eta == pytest.approx(3.0, rel=1e-12)

    def test_wrong_dimension(self):
        with pytest.raises(WrongDimension):
            ray_solve(hyperboloid_map(), [1.0, 2.0])

    @pytest.mark.parametrize("v", [[0.0, 0.0, 0.0], [1.0, 0.0, 0.5], [0.0, 0.0, -1.0], [math.nan, 0, 1]])
    def test_hyperboloid_outside_cone(self, v):
        with pytest.raises(OutsideCone):
            ray_solve(hyperboloid_map(), v)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(-50, 50), st.floats(-50, 50), st.floats(1e-3, 1e3))
    def test_round_trip_hyperboloid(self, x, y, t):
        f = hyperboloid_map()
        v = t * f((x, y))
        u, eta = ray_solve(f, v)
        np.testing.assert_allclose(u, [x, y], rtol=1e-9, atol=1e-12)
        assert eta == pytest.approx(t, rel=1e-9)
        assert np.linalg.norm(eta * f(u) - v) <= 1e-10 * np.linalg.norm(v)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(1e-2, 1e2), st.floats(1e-3, 1e3),
           st.sampled_from([(1.0, 0.0), (2.0, -1.0), (0.5, 0.5), (-3.0, 2.0)]))
    def test_round_trip_gini(self, x, t, pq):
        f = gini_map(*pq)
        v = t * f(x)
        u, eta = ray_solve(f, v)
        assert u[0] == pytest.approx(x, rel=1e-9)
        assert eta == pytest.approx(t, rel=1e-9)
        assert np.linalg.norm(eta * f(u) - v) <= 1e-10 * np.linalg.norm(v)

    @settings(max_examples=100, deadline=None)
    @given(st.floats(1e-2, 1e2), st.floats(1e-2, 1e2))
    def test_round_trip_generic_ratio(self, x, t):
        f = ratio_map(lambda s: s + np.exp(-s), lambda s: 1.0 + s * s, 0.0, math.inf)
        u, eta = ray_solve(f, t * f(x))
        assert u[0] == pytest.approx(x, rel=1e-9)
        assert eta == pytest.approx(t, rel=1e-9)


class TestInvertMonotone:
    @pytest.mark.parametrize("a, b", [(0.0, 1.0), (0.0, math.inf), (-math.inf, 0.0), (-math.inf, math.inf)])
    def test_brackets_each_interval_shape(self, a, b):
        target_x = {(0.0, 1.0): 0.999, (0.0, math.inf): 1e-6, (-math.inf, 0.0): -1e5,
                    (-math.inf, math.inf): 123.0}[(a, b)]
        fn = lambda t: t ** 3 + t  # noqa: E731
        x = invert_monotone(fn, fn(target_x), a, b, True)
        assert x == pytest.approx(target_x, rel=1e-12)

    def test_decreasing(self):
        x = invert_monotone(lambda t: -math.log(t), -math.log(7.0), 0.0, math.inf, False)
        assert x == pytest.approx(7.0, rel=1e-13)

    def test_unbracketable(self):
        with pytest.raises(RootNotBracketed):
            invert_monotone(math.atan, 2.0, -math.inf, math.inf, True)


class TestLinearTransform:
    def test_same_mean(self):
        f = gini_map(1, 0)
        g = linear_transform(f, [[2.0, 1.0], [0.0, 3.0]])
        v = g(2.0) + g(4.0)
        u, eta = ray_solve(g, v)
        assert u[0] == pytest.approx(3.0, rel=1e-12) and eta == pytest.approx(2.0, rel=1e-12)

    def test_rank_deficient(self):
        from bajra.errors import MismatchedShapes

        with pytest.raises(MismatchedShapes):
            linear_transform(gini_map(1, 0), [[1.0, 1.0], [2.0, 2.0]])

    def test_off_range(self):
        g = linear_transform(gini_map(1, 0), [[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
        with pytest.raises(OutsideCone):
            ray_solve(g, [1.0, 1.0, 5.0])


class TestAdmissibility2d:
    def test_arithmetic_passes(self):
        cert = check_admissibility_2d(lambda x: (x, 1.0), grid=[1, 2, 3])
        assert cert.verdict == "pass" and cert.witness is None and cert.samples_used == 3
        # det(x, y) = x - y, normalised by |f(x)||f(y)|
        assert cert.min_abs_det == pytest.approx(1.0 / math.sqrt(10.0 * 5.0), rel=1e-12)
        assert not cert.sign_changes

    def test_diagonal_fails(self):
        cert = check_admissibility_2d(lambda x: (x, x), grid=[1, 2, 3])
        assert cert.verdict == "fail"
        x, y = cert.witness
        assert x < y and cert.min_abs_det <= 1e-12

    def test_certificate_is_not_proof(self):
        # (x^2, x) on a grid straddling 0: every sampled pair is independent
        f = lambda x: (x * x, x)  # noqa: E731
        dets = {(-1, 0.5): 1 * 0.5 - 0.25 * -1, (-1, 1): 1 * 1 - 1 * -1, (0.5, 1): 0.25 * 1 - 1 * 0.5}
        assert all(d != 0 for d in dets.values())
        assert check_admissibility_2d(f, grid=[-1, 1]).verdict == "pass"
        cert = check_admissibility_2d(f, grid=[-1, 0.5, 1])
        assert cert.verdict == "pass" and cert.sign_changes

    def test_registered_maps_pass(self):
        for fmap in (gini_map(2, -1), gini_map(1.5, 1.5), quasi_arithmetic_map(np.log, 0.0, math.inf)):
            cert = check_admissibility_2d(fmap)
            assert cert.verdict == "pass" and cert.samples_used == 256

    def test_grid_size_setting(self):
        assert check_admissibility_2d(gini_map(1, 0), n_grid=32).samples_used == 32

    def test_wrong_dimension(self):
        with pytest.raises(WrongDimension):
            check_admissibility_2d(hyperboloid_map())
        with pytest.raises(WrongDimension):
            check_admissibility_2d(lambda x: (x, 1.0), grid=[1, 1])
        with pytest.raises(WrongDimension):
            check_admissibility_2d(lambda x: (x, 1.0, 2.0), grid=[1, 2])

    def test_order_independent(self):
        f = lambda x: (math.cos(x), math.sin(x))  # noqa: E731
        grid = np.linspace(0.1, 3.0, 40)
        a = check_admissibility_2d(f, grid=grid)
        b = check_admissibility_2d(f, grid=grid[::-1])
        assert a == b


class TestDomain:
    def test_sampling_stays_inside(self):
        rng = np.random.default_rng(0)
        for dom in (interval(0, 1), interval(0, math.inf), interval(-math.inf, 2), interval()):
            pts = dom.sample(rng, 500)
            assert all(dom.contains(p) for p in pts)
            assert all(dom.contains(p) for p in dom.grid(64))
