import numpy as np
import pytest

from balldesign.canonical import (CanonicalProblem, Region, householder_to, map_back,
                                  reduce, to_canonical_points)
from balldesign.errors import ConfigurationError, ContractViolation
from balldesign.exact import optimal_design
from balldesign.geometry import BallDesign, random_rotation
from balldesign.information import d_criterion, d_efficiency, info_matrix


class TestReduce:
    def test_permutation_example(self):
        p = reduce([0.1, 0.0, 1.0, 0.0])
        assert p.beta0 == pytest.approx(0.1) and p.beta1 == pytest.approx(1.0)
        np.testing.assert_allclose(p.rotation @ [1, 0, 0], [0, 1, 0], atol=1e-15)

    def test_norm_example(self):
        assert reduce([0.0, 3.0, 4.0]).beta1 == pytest.approx(5.0)

    def test_zero_slope(self):
        p = reduce([0.3, 0.0, 0.0])
        assert p.beta1 == 0.0 and p.is_constant
        np.testing.assert_array_equal(p.rotation, np.eye(2))

    def test_tiny_slope_is_zero(self):
        assert reduce([0.0, 1e-13, 0.0]).beta1 == 0.0

    def test_rotation_orthogonal_and_first_column(self):
        rng = np.random.default_rng(1)
        for k in (2, 3, 5, 8):
            beta = rng.normal(size=k + 1)
            p = reduce(beta)
            np.testing.assert_allclose(p.rotation.T @ p.rotation, np.eye(k), atol=1e-12)
            np.testing.assert_allclose(p.rotation[:, 0] * p.beta1, beta[1:], atol=1e-12)

    def test_region_shift_and_scale(self):
        reg = Region([1.0, -2.0], [[2.0, 0.0], [0.0, 3.0]])
        p = reduce([0.5, 1.0, 1.0], reg)
        assert p.beta0 == pytest.approx(0.5 + 1.0 - 2.0)
        assert p.beta1 == pytest.approx(np.hypot(2.0, 3.0))

    def test_singular_region(self):
        with pytest.raises(ConfigurationError):
            Region([0.0, 0.0], [[1.0, 2.0], [2.0, 4.0]])

    def test_dimension_mismatch(self):
        with pytest.raises(ConfigurationError):
            reduce([0, 1, 2], Region.unit(3))

    def test_needs_two_entries(self):
        with pytest.raises(ConfigurationError):
            reduce([1.0])

    def test_householder_maps_e1(self):
        d = np.array([0.6, 0.0, -0.8])
        H = householder_to(d)
        np.testing.assert_allclose(H[:, 0], d, atol=1e-15)
        np.testing.assert_allclose(H @ H.T, np.eye(3), atol=1e-15)


class TestMapBack:
    def test_identity(self):
        d = BallDesign([[0.5, 0.1], [-0.2, 0.3]], [0.5, 0.5])
        out = map_back(d, CanonicalProblem.simple(2, 0.0, 1.0))
        np.testing.assert_array_equal(out.points, d.points)
        np.testing.assert_array_equal(out.weights, d.weights)

    def test_rotation_example(self):
        p = reduce([0.0, 0.0, 1.0, 0.0])
        out = map_back(BallDesign([[1.0, 0.0, 0.0]], [1.0]), p)
        np.testing.assert_allclose(out.points, [[0.0, 1.0, 0.0]], atol=1e-15)

    def test_affine_example(self):
        p = reduce([0.0, 1.0, 0.0, 0.0], Region([1.0, 0.0, 0.0], 2 * np.eye(3)))
        out = map_back(BallDesign([[1.0, 0.0, 0.0]], [1.0]), p)
        np.testing.assert_allclose(out.points, [[3.0, 0.0, 0.0]], atol=1e-15)

    def test_outside_ball(self):
        with pytest.raises(ContractViolation):
            map_back(BallDesign([[1.5, 0.0]], [1.0], check_ball=False),
                     CanonicalProblem.simple(2, 0, 1))

    def test_round_trip_points(self):
        rng = np.random.default_rng(3)
        reg = Region(rng.normal(size=3), rng.normal(size=(3, 3)) + 2 * np.eye(3))
        p = reduce(rng.normal(size=4), reg)
        pts = rng.uniform(-0.5, 0.5, size=(5, 3))
        back = map_back(BallDesign(pts, np.full(5, 0.2)), p)
        np.testing.assert_allclose(to_canonical_points(back.points, p), pts, atol=1e-12)


class TestEquivariance:
    def test_efficiency_invariant_under_region(self, logit):
        rng = np.random.default_rng(7)
        beta = np.array([0.2, 0.7, -0.4, 0.3])
        reg = Region(rng.normal(size=3) * 0.3, rng.normal(size=(3, 3)) * 0.3 + np.eye(3))
        sol = optimal_design(logit, beta, reg)
        prob = sol.problem
        # a feasible competitor: the canonical design with a shrunk orbit
        pts = sol.canonical.points * 0.9
        comp = BallDesign(pts, sol.canonical.weights)
        comp_orig = map_back(comp, prob)
        e_canon = d_efficiency(comp, sol.canonical, logit, prob.beta)
        e_orig = d_efficiency(comp_orig, sol.design, logit, beta)
        assert e_orig == pytest.approx(e_canon, abs=1e-10)
        # the determinant changes by det(B)^2 only
        ratio = (d_criterion(info_matrix(sol.design, logit, beta))
                 / d_criterion(info_matrix(sol.canonical, logit, prob.beta)))
        assert ratio == pytest.approx(np.linalg.det(reg.matrix) ** 2, rel=1e-10)

    @pytest.mark.parametrize("k", [2, 3])
    def test_optimal_design_rotates_with_beta(self, cll, k):
        rng = np.random.default_rng(k)
        Q = random_rotation(k, seed=11)
        beta = np.concatenate([[0.2], rng.normal(size=k)])
        beta_r = np.concatenate([[beta[0]], Q @ beta[1:]])
        d = optimal_design(cll, beta).design
        d_r = optimal_design(cll, beta_r).design
        det = d_criterion(info_matrix(d, cll, beta))
        rotated = BallDesign(d.points @ Q.T, d.weights)
        assert d_criterion(info_matrix(rotated, cll, beta_r)) == pytest.approx(det, rel=1e-10)
        assert d_criterion(info_matrix(d_r, cll, beta_r)) == pytest.approx(det, rel=1e-10)
