"""Information matrices, the D-criterion and the equivalence-theorem check.

For a design ``xi`` and parameter ``beta`` the information matrix is

    M(xi, beta) = sum_i w_i * lam(f(x_i)^T beta) * f(x_i) f(x_i)^T,
    f(x) = (1, x_1, ..., x_k)^T.

Rotation invariant designs in canonical coordinates have the block form
``diag(upper 2x2 moment block, c * I_{k-1})`` which only depends on the
marginal design of ``x1``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor

from .canonical import CanonicalProblem, householder_to, reduce
from .errors import ConfigurationError, ContractViolation
from .geometry import BallDesign, sphere_points

SINGULAR_PIVOT = 1e-14


def regressors(points):
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    return np.hstack([np.ones((pts.shape[0], 1)), pts])


def info_matrix(design: BallDesign, model, beta) -> np.ndarray:
    """Information matrix of a finite design."""
    beta = np.asarray(beta, dtype=float).ravel()
    F = regressors(design.points)
    if F.shape[1] != beta.size:
        raise ConfigurationError(
            f"beta has length {beta.size}, design needs {F.shape[1]}")
    lam = np.asarray(model(F @ beta), dtype=float)
    wl = design.weights * lam
    return (F * wl[:, None]).T @ F


def _upper_block(xs, ws, q):
    m0 = np.sum(ws * q)
    m1 = np.sum(ws * q * xs)
    m2 = np.sum(ws * q * xs * xs)
    return np.array([[m0, m1], [m1, m2]])


def marginal_info_matrix(marginal, model, prob: CanonicalProblem) -> np.ndarray:
    """Block information matrix of ``marginal`` combined with uniform orbits.

    For k = 1 only the 2x2 moment block exists and is returned.
    """
    xs = np.asarray(marginal.points, dtype=float)
    ws = np.asarray(marginal.weights, dtype=float)
    q = np.asarray(model(prob.beta0 + prob.beta1 * xs), dtype=float)
    k = prob.k
    M = np.zeros((k + 1, k + 1))
    M[:2, :2] = _upper_block(xs, ws, q)
    if k > 1:
        c = np.sum(ws * q * (1.0 - xs * xs)) / (k - 1)
        M[2:, 2:] = c * np.eye(k - 1)
    return M


def two_orbit_info_matrix(x11, x12, alpha, m, model, prob: CanonicalProblem) -> np.ndarray:
    """Information matrix of two orbits on orthogonal sub-spheres.

    The ``x11`` orbit (mass ``1/2 - alpha``) is uniform on a sub-sphere
    spanning ``m - 1`` coordinates, the ``x12`` orbit (mass ``1/2 + alpha``)
    on the remaining ``k - m`` coordinates.
    """
    k = prob.k
    if not (2 <= m <= k - 1):
        raise ConfigurationError(f"need 2 <= m <= k-1, got m={m}, k={k}")
    if not (-0.5 < alpha < 0.5):
        raise ConfigurationError("alpha must lie in (-1/2, 1/2)")
    xs = np.array([x11, x12], dtype=float)
    ws = np.array([0.5 - alpha, 0.5 + alpha])
    q = np.asarray(model(prob.beta0 + prob.beta1 * xs), dtype=float)
    M = np.zeros((k + 1, k + 1))
    M[:2, :2] = _upper_block(xs, ws, q)
    c1 = q[0] * (1.0 - x11 ** 2) * ws[0] / (m - 1)
    c2 = q[1] * (1.0 - x12 ** 2) * ws[1] / (k - m)
    diag = np.concatenate([np.full(m - 1, c1), np.full(k - m, c2)])
    M[2:, 2:] = np.diag(diag)
    return M


def d_criterion(M) -> float:
    """Determinant via pivoted LU; 0 if the smallest pivot is negligible."""
    M = np.asarray(M, dtype=float)
    with warnings.catch_warnings():
        # exact zero pivots are handled below
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = lu_factor(M, check_finite=True)
    d = np.diag(lu)
    amax = np.max(np.abs(d))
    if amax == 0.0 or np.min(np.abs(d)) < SINGULAR_PIVOT * amax:
        return 0.0
    sign = -1.0 if np.count_nonzero(piv != np.arange(piv.size)) % 2 else 1.0
    return float(sign * np.prod(d))


def _det_of(design, model, beta, region=None):
    """Determinant of a BallDesign or a marginal design (canonical form of ``beta``)."""
    if isinstance(design, BallDesign):
        return d_criterion(info_matrix(design, model, beta)), design.k
    prob = reduce(beta, region)
    det = d_criterion(marginal_info_matrix(design, model, prob))
    if region is not None:
        det *= np.linalg.det(region.matrix) ** 2
    return det, prob.k


def d_efficiency(candidate, optimal, model, beta, region=None) -> float:
    """``(det M(candidate) / det M(optimal))^(1/p)`` with ``p = k + 1``.

    ``optimal`` may be a finite design or a marginal design in canonical
    coordinates of ``beta``.  Values above 1 by at most 1e-10 are reported
    as exactly 1.
    """
    det_opt, k = _det_of(optimal, model, beta, region)
    if det_opt <= 0.0:
        raise ContractViolation("reference design has a singular information matrix")
    det_c, _ = _det_of(candidate, model, beta, region)
    eff = max(det_c, 0.0) / det_opt
    eff = eff ** (1.0 / (k + 1))
    if 1.0 < eff <= 1.0 + 1e-10:
        eff = 1.0
    return float(eff)


@dataclass(frozen=True)
class SensitivityReport:
    """Result of the equivalence-theorem check ``max d(x) <= p``."""

    max_value: float
    argmax: np.ndarray
    min_support: float
    passed: bool
    bound: float
    n_points: int

    def as_dict(self):
        return {"max": self.max_value, "argmax": self.argmax.tolist(),
                "min_support": self.min_support, "pass": self.passed}


def sensitivity(points, M_inv, model, beta):
    F = regressors(points)
    lam = np.asarray(model(F @ beta), dtype=float)
    return lam * np.einsum("ij,jk,ik->i", F, M_inv, F)


def _check_points(k, beta, n_grid, seed):
    pts = [sphere_points(k, n_grid, seed)]
    if k > 1:
        slope = np.asarray(beta[1:], dtype=float)
        ns = np.linalg.norm(slope)
        u = slope / ns if ns > 0 else np.eye(k)[0]
        # orthonormal complement of u: columns 2..k of the Householder matrix
        H = householder_to(u)
        t = np.linspace(-1.0, 1.0, 2001)
        s = np.sqrt(1.0 - t * t)
        for j in range(1, k):
            for sign in (1.0, -1.0):
                pts.append(np.outer(t, u) + sign * np.outer(s, H[:, j]))
        # interior shells guard against maxima inside the ball
        for r in (0.0, 0.25, 0.5, 0.75):
            pts.append(r * sphere_points(k, max(n_grid // 10, 10), seed + 1))
    return np.vstack(pts)


def sensitivity_check(design: BallDesign, model, beta, n_grid: int = 10000,
                      tol: float = 1e-6, seed: int = 0) -> SensitivityReport:
    """Kiefer-Wolfowitz check for D-optimality of ``design`` at ``beta``.

    ``d(x) = lam(f(x)^T beta) f(x)^T M^{-1} f(x)`` is evaluated on a
    quasi-uniform sphere sample, a one-dimensional sweep along the slope
    direction, a few interior shells and the design's own support.  The
    design passes when ``max d <= p (1 + tol)`` and ``d >= p (1 - tol)`` at
    every support point.  Ties in the argmax go to the first sample.
    """
    beta = np.asarray(beta, dtype=float).ravel()
    M = info_matrix(design, model, beta)
    if d_criterion(M) <= 0.0:
        raise ContractViolation("design information matrix is singular")
    M_inv = np.linalg.inv(M)
    k = design.k
    p = k + 1
    grid = _check_points(k, beta, n_grid, seed)
    d_grid = sensitivity(grid, M_inv, model, beta)
    d_supp = sensitivity(design.points, M_inv, model, beta)
    all_pts = np.vstack([grid, design.points])
    all_d = np.concatenate([d_grid, d_supp])
    i = int(np.argmax(all_d))
    max_d = float(all_d[i])
    min_s = float(d_supp.min())
    passed = bool(max_d <= p * (1.0 + tol) and min_s >= p * (1.0 - tol))
    return SensitivityReport(max_d, all_pts[i], min_s, passed, float(p), all_pts.shape[0])
