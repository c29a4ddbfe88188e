import numpy as np
import pytest

from balldesign.errors import ConfigurationError, ContractViolation
from balldesign.geometry import (BallDesign, cross_polytope, discretize_full_orbits,
                                 discretize_pole_orbit, random_rotation, regular_simplex,
                                 simplex_design, sphere_points, two_orbit_min_support)
from balldesign.marginal import Case, MarginalDesign


def _marg(points, weights, case=Case.C0):
    return MarginalDesign(np.array(points, float), np.array(weights, float), case)


class TestRegularSimplex:
    def test_m1(self):
        np.testing.assert_allclose(regular_simplex(1), [[1.0, -1.0]], atol=1e-15)

    @pytest.mark.parametrize("m", [1, 2, 3, 4, 7, 11])
    def test_invariants(self, m):
        S = regular_simplex(m)
        assert S.shape == (m, m + 1)
        np.testing.assert_allclose(np.linalg.norm(S, axis=0), 1.0, atol=1e-12)
        gram = ((m + 1) * np.eye(m + 1) - np.ones((m + 1, m + 1))) / m
        np.testing.assert_allclose(S.T @ S, gram, atol=1e-12)
        np.testing.assert_allclose(S.sum(axis=1), 0.0, atol=1e-12)

    def test_isotropic_second_moment(self):
        S = regular_simplex(4)
        np.testing.assert_allclose(S @ S.T / 5, np.eye(4) / 4, atol=1e-12)

    def test_bad_dimension(self):
        with pytest.raises(ConfigurationError):
            regular_simplex(0)

    def test_cross_polytope(self):
        C = cross_polytope(2)
        assert C.shape == (2, 4)
        np.testing.assert_allclose(C @ C.T / 4, np.eye(2) / 2)


class TestBallDesign:
    def test_weights_must_sum_to_one(self):
        with pytest.raises(ContractViolation):
            BallDesign([[0.0], [0.5]], [0.5, 0.6])

    def test_points_inside_ball(self):
        with pytest.raises(ContractViolation):
            BallDesign([[0.9, 0.9]], [1.0])

    def test_positive_weights(self):
        with pytest.raises(ContractViolation):
            BallDesign([[0.0], [0.5]], [1.5, -0.5])

    def test_records(self):
        d = BallDesign([[0.1, 0.2]], [1.0])
        assert d.records() == [{"x": [0.1, 0.2], "w": 1.0}]
        assert d.k == 2 and d.size == 1


class TestPoleOrbit:
    def test_k1(self):
        d = discretize_pole_orbit(_marg([1.0, -1.0], [0.5, 0.5], Case.C1), 1)
        np.testing.assert_array_equal(d.points.ravel(), [1.0, -1.0])
        np.testing.assert_array_equal(d.weights, [0.5, 0.5])

    def test_k3_pole_plus(self):
        d = discretize_pole_orbit(_marg([1.0, -0.5], [0.25, 0.75], Case.C1), 3)
        assert d.size == 4
        np.testing.assert_allclose(d.weights, 0.25)
        np.testing.assert_array_equal(d.points[0], [1.0, 0.0, 0.0])
        np.testing.assert_allclose(np.linalg.norm(d.points[1:, 1:], axis=1), np.sqrt(0.75))
        np.testing.assert_allclose(d.points[1:, 0], -0.5)

    def test_k2_pole_minus(self):
        d = discretize_pole_orbit(_marg([0.3, -1.0], [2 / 3, 1 / 3], Case.C2), 2)
        assert d.size == 3
        np.testing.assert_allclose(d.weights, 1 / 3)
        np.testing.assert_array_equal(d.points[-1], [-1.0, 0.0])
        np.testing.assert_allclose(np.abs(d.points[:2, 1]), np.sqrt(1 - 0.09))

    def test_wrong_weights(self):
        with pytest.raises(ContractViolation):
            discretize_pole_orbit(_marg([1.0, -0.5], [0.5, 0.5], Case.C1), 3)

    def test_no_pole(self):
        with pytest.raises(ContractViolation):
            discretize_pole_orbit(_marg([0.5, -0.5], [0.5, 0.5]), 3)


class TestTwoOrbit:
    def test_k3_m2(self):
        d = two_orbit_min_support(0.52, -0.52, 2, 3)
        assert d.size == 4
        np.testing.assert_allclose(d.points[:2, 0], 0.52)
        np.testing.assert_allclose(d.points[2:, 0], -0.52)
        np.testing.assert_array_equal(d.points[:2, 2], 0.0)
        np.testing.assert_array_equal(d.points[2:, 1], 0.0)
        np.testing.assert_allclose(np.linalg.norm(d.points, axis=1), 1.0)

    def test_k6_m3_masses(self):
        d = two_orbit_min_support(0.4, -0.6, 3, 6)
        assert d.size == 7
        assert np.sum(d.points[:, 0] == 0.4) == 3 and np.sum(d.points[:, 0] == -0.6) == 4
        np.testing.assert_allclose(d.weights, 1 / 7)
        assert d.provenance == "two_orbit(3)"

    @pytest.mark.parametrize("k,m", [(3, 2), (5, 2), (5, 3), (5, 4), (8, 5)])
    def test_orthogonal_and_affinely_independent(self, k, m):
        R1 = random_rotation(m - 1, seed=1)
        R2 = random_rotation(k - m, seed=2)
        d = two_orbit_min_support(0.3, -0.7, m, k, R1, R2)
        A, B = d.points[:m, 1:], d.points[m:, 1:]
        assert np.max(np.abs(A @ B.T)) <= 1e-12
        F = np.hstack([np.ones((k + 1, 1)), d.points])
        assert abs(np.linalg.det(F)) > 1e-6

    def test_equal_positions_rejected(self):
        with pytest.raises(ConfigurationError):
            two_orbit_min_support(0.2, 0.2, 2, 3)

    @pytest.mark.parametrize("m", [1, 3])
    def test_m_out_of_range(self, m):
        with pytest.raises(ConfigurationError, match="pole"):
            two_orbit_min_support(0.5, -0.5, m, 3)

    def test_bad_rotation(self):
        with pytest.raises(ConfigurationError):
            two_orbit_min_support(0.5, -0.5, 2, 4, R1=np.array([[2.0]]))


class TestFullOrbits:
    def test_six_point_design(self):
        d = discretize_full_orbits(_marg([0.52, -0.52], [0.5, 0.5]), 3, [3, 3])
        assert d.size == 6
        np.testing.assert_allclose(d.weights, 1 / 6)

    def test_pole_unchanged(self):
        d = discretize_full_orbits(_marg([1.0, -0.2], [0.25, 0.75], Case.C1), 3)
        np.testing.assert_array_equal(d.points[0], [1.0, 0.0, 0.0])
        assert d.weights[0] == pytest.approx(0.25)

    def test_square(self):
        d = discretize_full_orbits(_marg([0.42, -0.62], [3 / 7, 4 / 7]), 3, [4, 3])
        sq = d.points[:4]
        np.testing.assert_allclose(sq[:, 0], 0.42)
        np.testing.assert_allclose(np.linalg.norm(sq[:, 1:], axis=1), np.sqrt(1 - 0.42 ** 2))
        # adjacent square vertices are orthogonal in the sub-sphere
        assert sq[0, 1:] @ sq[1, 1:] == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize("k", [2, 3, 5])
    def test_moments_match_uniform_orbit(self, k):
        x = 0.35
        for n in (k, 2 * (k - 1)):
            d = discretize_full_orbits(_marg([x, -1.0], [k / (k + 1), 1 / (k + 1)], Case.C2), k,
                                       [n, 1])
            orb = d.points[:n, 1:]
            np.testing.assert_allclose(orb.mean(axis=0), 0.0, atol=1e-12)
            np.testing.assert_allclose(orb.T @ orb / n, (1 - x * x) / (k - 1) * np.eye(k - 1),
                                       atol=1e-12)

    def test_unsupported_count(self):
        with pytest.raises(ConfigurationError):
            discretize_full_orbits(_marg([0.5, -0.5], [0.5, 0.5]), 3, [5, 3])


class TestSimplexAndSphere:
    def test_simplex_design(self):
        d = simplex_design(3, random_rotation(3, seed=4))
        np.testing.assert_allclose(np.linalg.norm(d.points, axis=1), 1.0)
        np.testing.assert_allclose(d.weights @ d.points, 0.0, atol=1e-15)

    def test_random_rotation_orthogonal_and_seeded(self):
        Q = random_rotation(5, seed=3)
        np.testing.assert_allclose(Q.T @ Q, np.eye(5), atol=1e-12)
        np.testing.assert_array_equal(Q, random_rotation(5, seed=3))

    @pytest.mark.parametrize("k", [1, 2, 3, 6])
    def test_sphere_points(self, k):
        pts = sphere_points(k, 500)
        assert pts.shape == (500, k)
        if k > 1:
            np.testing.assert_allclose(np.linalg.norm(pts, axis=1), 1.0)
