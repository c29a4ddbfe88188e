"""Randomized invariants over models, dimensions and parameters."""

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from balldesign.canonical import CanonicalProblem, Region, map_back, reduce
from balldesign.exact import optimal_design
from balldesign.geometry import BallDesign, random_rotation, regular_simplex
from balldesign.information import (d_criterion, info_matrix, marginal_info_matrix,
                                    sensitivity_check)
from balldesign.intensity import builtin_model
from balldesign.marginal import Case, optimal_marginal, solve_general_c, solve_symmetric

MODELS = {n: builtin_model(n) for n in ("logit", "probit", "comploglog", "poisson")}
FAST = settings(max_examples=25, deadline=None,
                suppress_health_check=[HealthCheck.function_scoped_fixture])

models = st.sampled_from(sorted(MODELS))
beta0s = st.floats(-1.5, 1.5)
beta1s = st.floats(0.2, 3.0)


@given(st.integers(1, 15))
@FAST
def test_simplex_gram(m):
    S = regular_simplex(m)
    gram = ((m + 1) * np.eye(m + 1) - np.ones((m + 1, m + 1))) / m
    np.testing.assert_allclose(S.T @ S, gram, atol=1e-12)
    np.testing.assert_allclose(S.sum(axis=1), 0.0, atol=1e-12)


@given(models, st.integers(1, 5), beta0s, beta1s)
@FAST
def test_marginal_weights_and_support(name, k, b0, b1):
    d = optimal_marginal(MODELS[name], CanonicalProblem.simple(k, b0, b1))
    assert d.weights.sum() == pytest.approx(1.0, abs=1e-12)
    assert np.all(np.abs(d.points) <= 1.0)
    assert d.x11 > d.x12


@given(models, st.integers(1, 4), beta0s, beta1s)
@FAST
def test_optimal_design_certified(name, k, b0, b1):
    model = MODELS[name]
    prob = CanonicalProblem.simple(k, b0, b1)
    sol = optimal_design(model, prob.beta)
    assert sol.design.weights.sum() == pytest.approx(1.0, abs=1e-12)
    assert sensitivity_check(sol.design, model, prob.beta, n_grid=2000).passed


@given(st.sampled_from(["logit", "comploglog"]), st.integers(2, 6), beta0s, beta1s,
       st.integers(0, 10 ** 6))
@FAST
def test_rotation_invariance(name, k, b0, b1, seed):
    model = MODELS[name]
    rng = np.random.default_rng(seed)
    beta = np.concatenate([[b0], rng.normal(size=k)])
    beta[1:] *= b1 / np.linalg.norm(beta[1:])
    d = optimal_design(model, beta).design
    Q = random_rotation(k, seed)
    det = d_criterion(info_matrix(d, model, beta))
    det_r = d_criterion(info_matrix(BallDesign(d.points @ Q.T, d.weights), model,
                                    np.concatenate([[b0], Q @ beta[1:]])))
    assert det_r == pytest.approx(det, rel=1e-10)


@given(st.sampled_from(["logit", "probit"]), st.integers(2, 6), st.floats(-0.3, 0.3), beta1s)
@FAST
def test_symmetric_reduction_agrees(name, k, b0, b1):
    model = MODELS[name]
    prob = CanonicalProblem.simple(k, b0, b1)
    g = solve_general_c(model, prob)
    if g.case != Case.C0:
        return
    s = solve_symmetric(model, prob)
    np.testing.assert_allclose([s.x, s.y, s.alpha], [g.x11, g.x12, g.alpha], atol=1e-8)


@given(st.integers(1, 4), st.integers(0, 10 ** 6))
@FAST
def test_map_back_keeps_weights_and_region(k, seed):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(k, k)) + 2 * np.eye(k)
    reg = Region(rng.normal(size=k), A)
    beta = rng.normal(size=k + 1)
    prob = reduce(beta, reg)
    sol = optimal_design(MODELS["logit"], beta, reg)
    np.testing.assert_allclose(sol.design.weights, sol.canonical.weights)
    u = np.linalg.solve(A, (sol.design.points - reg.center).T).T
    assert np.all(np.linalg.norm(u, axis=1) <= 1 + 1e-9)
    assert map_back(sol.canonical, prob).points.shape == sol.design.points.shape


@given(models, st.integers(2, 5), beta0s, beta1s)
@FAST
def test_marginal_matrix_is_psd(name, k, b0, b1):
    prob = CanonicalProblem.simple(k, b0, b1)
    M = marginal_info_matrix(optimal_marginal(MODELS[name], prob), MODELS[name], prob)
    np.testing.assert_allclose(M, M.T, atol=1e-15)
    assert np.linalg.eigvalsh(M).min() > 0
