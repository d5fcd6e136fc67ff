"""Tests for the fractional-moment integral, its infimum, and the hull side.

Oracles: segment-wise adaptive quadrature of the step integrand, dense
t-grids, and the continuous log-linear case where the minimizing t has a
closed form and the two sides agree exactly.
"""

import math

import numpy as np
import pytest
from scipy import integrate

from tailbounds.distributions import (
    DiscreteDist,
    StepSurvival,
    iid_sum_survival,
    two_point_from_range,
    two_point_from_variance,
)
from tailbounds.hull import log_concave_hull, eval_hull
from tailbounds.fracmoment import (
    FractionalMomentQuery,
    lhs_inf,
    lhs_inf_sweep,
    moment_constant,
    rhs_bound,
    step_integral_moment,
)
from tailbounds.bounds import RANGE_CONST, SYMMETRIC_CONST, VARIANCE_CONST


def quad_step_integral(S, s, t):
    """Adaptive quadrature of s (z-t)^(s-1) B(z) over each constant segment."""
    total = 0.0
    edges = [t] + [float(x) for x in S.knots if x > t]
    values = S.values
    for lo, hi in zip(edges, edges[1:]):
        # B on (lo, hi] is the survival just above lo
        level = float(S.eval(0.5 * (lo + hi)))
        val, _ = integrate.quad(
            lambda z: s * (z - t) ** (s - 1.0) * level, lo, hi, epsabs=1e-14, epsrel=1e-12
        )
        total += val
    return total


def random_survival(rng, max_points=7):
    k = int(rng.integers(2, max_points + 1))
    pts = np.sort(rng.uniform(-2.0, 2.0, k))
    pts = pts[np.concatenate(([True], np.diff(pts) > 1e-6))]
    probs = rng.dirichlet(np.ones(pts.size))
    return DiscreteDist.from_probs(pts, probs).survival()


class TestStepIntegral:
    def test_zero_beyond_support(self):
        S = iid_sum_survival(two_point_from_range(-1.0, 1.0), 2)
        assert step_integral_moment(S, 1.5, 2.0) == 0.0
        assert step_integral_moment(S, 1.5, 5.0) == 0.0

    def test_fair_coin_s1(self):
        S = iid_sum_survival(two_point_from_range(-1.0, 1.0), 1)
        assert step_integral_moment(S, 1.0, 0.0) == pytest.approx(0.5, rel=1e-14)

    def test_fair_coin_s2(self):
        S = iid_sum_survival(two_point_from_range(-1.0, 1.0), 1)
        value = step_integral_moment(S, 2.0, -1.0)
        assert value == pytest.approx(quad_step_integral(S, 2.0, -1.0), rel=1e-12)
        assert value == pytest.approx(2.0, rel=1e-13)
        # cross-check against the direct expectation E(X - t)_+^2
        assert value == pytest.approx(0.5 * 0.0 + 0.5 * 4.0, rel=1e-13)

    def test_quadrature_oracle_random(self):
        rng = np.random.default_rng(19)
        for _ in range(30):
            S = random_survival(rng)
            s = float(rng.uniform(0.3, 3.5))
            t = float(rng.uniform(S.knots[0] - 2.0, S.knots[-1]))
            assert step_integral_moment(S, s, t) == pytest.approx(
                quad_step_integral(S, s, t), rel=1e-10, abs=1e-13
            )

    def test_equals_plus_moment(self):
        # integration by parts: the integral is E(X - t)_+^s exactly
        rng = np.random.default_rng(29)
        for _ in range(30):
            d_atoms = DiscreteDist.from_probs(
                np.sort(rng.uniform(-2, 2, 5)), rng.dirichlet(np.ones(5))
            )
            S = d_atoms.survival()
            s = float(rng.uniform(0.5, 3.0))
            t = float(rng.uniform(-3.0, 2.0))
            direct = float(d_atoms.probs @ np.clip(d_atoms.support - t, 0.0, None) ** s)
            assert step_integral_moment(S, s, t) == pytest.approx(direct, rel=1e-12, abs=1e-15)

    def test_fractional_order_below_one(self):
        # the closed form needs no quadrature even with the integrable singularity
        S = iid_sum_survival(two_point_from_range(-1.0, 1.0), 2)
        value = step_integral_moment(S, 0.5, -0.5)
        direct = float(
            np.sum(S.atom_masses * np.clip(S.knots + 0.5, 0.0, None) ** 0.5)
        )
        assert value == pytest.approx(direct, rel=1e-13)

    def test_rejects_nonpositive_order(self):
        S = iid_sum_survival(two_point_from_range(-1.0, 1.0), 1)
        with pytest.raises(ValueError):
            step_integral_moment(S, 0.0, 0.0)


class TestInfimum:
    def test_flat_region_fair_coin(self):
        S = iid_sum_survival(two_point_from_range(-1.0, 1.0), 1)
        assert lhs_inf(S, 1.0, 1.0) == pytest.approx(0.5, rel=1e-10)

    def test_dense_grid_oracle(self):
        rng = np.random.default_rng(37)
        for _ in range(10):
            S = random_survival(rng)
            s = float(rng.choice([1.0, 2.0, 2.5, 3.0]))
            x = float(rng.uniform(S.knots[1], S.knots[-1]))
            span = float(S.knots[-1] - S.knots[0])
            ts = np.linspace(x - 4 * span, x - 1e-9, 120_000)
            masses = S.atom_masses
            vals = (np.clip(S.knots[None, :] - ts[:, None], 0, None) ** s @ masses) / (x - ts) ** s
            oracle = float(vals.min())
            assert lhs_inf(S, s, x) <= oracle + 1e-12
            assert lhs_inf(S, s, x) == pytest.approx(oracle, rel=1e-6)

    def test_nonincreasing_in_x(self):
        S = iid_sum_survival(two_point_from_variance(0.21, 0.7), 10)
        for s in (1.0, 2.0, 3.0):
            xs = np.linspace(float(S.knots[1]), float(S.knots[-1]), 25)
            vals = [lhs_inf(S, s, float(x)) for x in xs]
            assert all(a >= b - 1e-12 for a, b in zip(vals, vals[1:]))

    def test_sweep_matches_standalone(self):
        rng = np.random.default_rng(53)
        for _ in range(8):
            S = random_survival(rng)
            s = float(rng.choice([1.0, 2.0, 2.5, 3.0]))
            mids = 0.5 * (S.knots[:-1] + S.knots[1:])
            xs = np.sort(np.concatenate([S.knots[1:], mids]))
            swept = lhs_inf_sweep(S, s, xs)
            for x, v in zip(xs, swept):
                assert v == pytest.approx(lhs_inf(S, s, float(x)), rel=1e-9, abs=1e-12)

    def test_beyond_support_vanishes(self):
        S = iid_sum_survival(two_point_from_range(-1.0, 1.0), 2)
        assert lhs_inf(S, 2.0, 2.5) == pytest.approx(0.0, abs=1e-15)


class TestHullSide:
    def test_constant_identities(self):
        assert moment_constant(1.0) == pytest.approx(RANGE_CONST, rel=1e-14)
        assert moment_constant(2.0) == pytest.approx(VARIANCE_CONST, rel=1e-14)
        assert moment_constant(3.0) == pytest.approx(SYMMETRIC_CONST, rel=1e-14)

    def test_fractional_constant(self):
        s = 2.5
        expected = math.exp(s) * s ** (-s) * math.exp(math.lgamma(s + 1.0))
        assert moment_constant(s) == pytest.approx(expected, rel=1e-13)
        assert moment_constant(s) == pytest.approx(4.096966298613827, rel=1e-12)

    def test_rhs_scales_hull(self):
        S = iid_sum_survival(two_point_from_range(-0.5, 0.5), 2)
        h = log_concave_hull(S)
        x = 0.5
        assert rhs_bound(h, 2.5, x) == pytest.approx(
            4.096966298613827 * eval_hull(h, x), rel=1e-13
        )

    def test_inequality_on_random_instances(self):
        rng = np.random.default_rng(61)
        for _ in range(25):
            S = random_survival(rng)
            h = log_concave_hull(S)
            for s in (1.0, 2.0, 2.5, 3.0):
                mids = 0.5 * (S.knots[:-1] + S.knots[1:])
                for x in np.concatenate([S.knots[1:], mids]):
                    assert lhs_inf(S, s, float(x)) <= rhs_bound(h, s, float(x)) + 1e-9


class TestQuery:
    def test_regime_bounds_from_survival(self):
        S = iid_sum_survival(two_point_from_range(-1.0, 1.0), 3)
        q = FractionalMomentQuery.from_survival(S, 2.0, 1.0)
        assert (q.alpha, q.beta) == (-3.0, 3.0)
        assert q.in_regime
        assert not FractionalMomentQuery.from_survival(S, 2.0, -3.0).in_regime
        assert not FractionalMomentQuery.from_survival(S, 2.0, 3.5).in_regime
        assert FractionalMomentQuery.from_survival(S, 2.0, 3.0).in_regime

    def test_validation(self):
        with pytest.raises(ValueError):
            FractionalMomentQuery(s=0.0, x=1.0, alpha=0.0, beta=1.0)
        with pytest.raises(ValueError):
            FractionalMomentQuery(s=1.0, x=1.0, alpha=2.0, beta=1.0)


class TestProofWitness:
    def test_continuous_log_linear_identity(self):
        # with B(z) = exp(-b z) the integral is Gamma(s+1) b^-s exp(-b t), and
        # at the witness t = x - s/b the objective equals the hull side exactly
        for s in (1.0, 2.0, 2.5, 3.0):
            for b in (0.5, 1.0, 2.3):
                x = 1.7
                t_star = x - s / b
                objective = (
                    math.exp(math.lgamma(s + 1.0))
                    * b**-s
                    * math.exp(-b * t_star)
                    / (x - t_star) ** s
                )
                hull_side = moment_constant(s) * math.exp(-b * x)
                assert objective == pytest.approx(hull_side, rel=1e-12)

    def test_discrete_log_linear_witness_converges(self):
        # fine step discretizations of the exponential survival: with the
        # witness t = x - s/b inside the support, the witness objective
        # approaches the hull side as the knot spacing shrinks
        b, s, x = 1.0, 2.0, 3.0
        gaps = []
        for spacing in (1e-2, 1e-3):
            knots = np.arange(0.0, 20.0, spacing)
            S = StepSurvival(knots, -b * knots)
            t_star = x - s / b
            witness = step_integral_moment(S, s, t_star) / (x - t_star) ** s
            hull_side = rhs_bound(log_concave_hull(S), s, x)
            assert witness <= hull_side + 1e-12
            gaps.append(hull_side - witness)
        assert gaps[1] < 0.2 * gaps[0]
        assert gaps[1] < 1e-3 * hull_side
