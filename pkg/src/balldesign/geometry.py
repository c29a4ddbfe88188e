"""Point-set constructions for exact designs on the unit ball.

Uniform orbit distributions are replaced by finite point sets with the same
first and second moments (zero mean, isotropic covariance).  Regular
simplices and cross-polytopes both have this property, so the information
matrix of a discretized design equals that of the generalized design.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, ContractViolation

FULL_SIMPLEX = "full_simplex"
POLE_ORBIT = "pole_orbit"
ROUNDED = "rounded"
CUSTOM = "custom"
FULL_ORBITS = "full_orbits"


def two_orbit_tag(m):
    return f"two_orbit({m})"


@dataclass(frozen=True)
class BallDesign:
    """Finite design: ``points`` (n, k) with positive ``weights`` summing to 1."""

    points: np.ndarray
    weights: np.ndarray
    provenance: str = CUSTOM
    check_ball: bool = True

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        w = np.atleast_1d(np.asarray(self.weights, dtype=float))
        if pts.ndim != 2 or pts.shape[0] != w.size or w.size == 0:
            raise ContractViolation(
                f"points {pts.shape} and weights {w.shape} do not match")
        if np.any(w <= 0):
            raise ContractViolation("design weights must be positive")
        if abs(w.sum() - 1.0) > 1e-12:
            raise ContractViolation(f"design weights sum to {w.sum()!r}, not 1")
        if self.check_ball and np.any(np.linalg.norm(pts, axis=1) > 1.0 + 1e-12):
            raise ContractViolation("design points must lie in the unit ball")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)

    @property
    def k(self):
        return self.points.shape[1]

    @property
    def size(self):
        return self.weights.size

    def records(self):
        return [{"x": p.tolist(), "w": float(w)} for p, w in zip(self.points, self.weights)]


def regular_simplex(m: int) -> np.ndarray:
    """Vertices of a regular ``m``-simplex on the unit sphere of R^m.

    Returns an ``m x (m+1)`` matrix whose columns are unit vectors with
    pairwise inner product ``-1/m``.
    """
    if m < 1:
        raise ConfigurationError("simplex dimension must be at least 1")
    head = (np.sqrt((m + 1) / m) * np.eye(m)
            + (1.0 - np.sqrt(m + 1)) / (m * np.sqrt(m)) * np.ones((m, m)))
    tail = -np.ones((m, 1)) / np.sqrt(m)
    return np.hstack([head, tail])


def cross_polytope(m: int) -> np.ndarray:
    """``m x 2m`` matrix of the vertices ``+-e_i`` of the cross-polytope."""
    if m < 1:
        raise ConfigurationError("cross-polytope dimension must be at least 1")
    eye = np.eye(m)
    return np.hstack([eye, -eye])


def random_rotation(n: int, seed=None) -> np.ndarray:
    """Orthogonal ``n x n`` matrix from the QR decomposition of a Gaussian matrix."""
    if n == 0:
        return np.zeros((0, 0))
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def _check_rotation(R, n, name):
    if R is None:
        return np.eye(n)
    R = np.asarray(R, dtype=float)
    if R.shape != (n, n) or not np.allclose(R.T @ R, np.eye(n), atol=1e-10):
        raise ConfigurationError(f"{name} must be an orthogonal {n}x{n} matrix")
    return R


def _orbit_points(x, k, unit_dirs):
    """Points ``(x, sqrt(1 - x^2) * d)`` for direction columns ``d`` (k-1 rows)."""
    radius = np.sqrt(max(0.0, 1.0 - x * x))
    n = unit_dirs.shape[1]
    pts = np.empty((n, k))
    pts[:, 0] = x
    pts[:, 1:] = radius * unit_dirs.T
    return pts


def _is_pole(x):
    return abs(abs(x) - 1.0) < 1e-12


def discretize_pole_orbit(marginal, k: int, rotation=None) -> BallDesign:
    """Pole plus a regular (k-1)-simplex on one orbit, weights ``1/(k+1)``."""
    xs = np.asarray(marginal.points, dtype=float)
    ws = np.asarray(marginal.weights, dtype=float)
    if xs.size != 2:
        raise ContractViolation("pole-orbit discretization needs a two-point marginal")
    poles = [i for i in range(2) if _is_pole(xs[i])]
    if not poles:
        raise ContractViolation("marginal design has no pole")
    if k == 1:
        if not np.allclose(ws, 0.5, atol=1e-12):
            raise ContractViolation("k=1 pole design must have weights 1/2")
        return BallDesign(xs.reshape(2, 1), [0.5, 0.5], POLE_ORBIT)
    # with two poles (k=1 only) the choice above already returned
    ip = poles[0]
    io = 1 - ip
    if not (np.isclose(ws[ip], 1.0 / (k + 1), atol=1e-12)
            and np.isclose(ws[io], k / (k + 1), atol=1e-12)):
        raise ContractViolation(
            f"pole-orbit design needs weights 1/(k+1) on the pole and k/(k+1) on the orbit, "
            f"got {ws.tolist()}")
    R = _check_rotation(rotation, k - 1, "rotation")
    pole = np.zeros((1, k))
    pole[0, 0] = np.sign(xs[ip])
    orbit = _orbit_points(xs[io], k, R @ regular_simplex(k - 1))
    pts = np.vstack([pole, orbit]) if ip == 0 else np.vstack([orbit, pole])
    return BallDesign(pts, np.full(k + 1, 1.0 / (k + 1)), POLE_ORBIT)


def two_orbit_min_support(x11, x12, m: int, k: int, R1=None, R2=None) -> BallDesign:
    """Minimally supported design on two orbits with orthogonal sub-spheres.

    ``m`` points at ``x1 = x11`` span coordinates ``2..m`` and ``k - m + 1``
    points at ``x1 = x12`` span coordinates ``m+1..k``.  All ``k + 1``
    points carry weight ``1/(k+1)``.
    """
    if k < 3 or not (2 <= m <= k - 1):
        raise ConfigurationError(
            f"two-orbit split needs 2 <= m <= k-1 (k={k}, m={m}); "
            "use the pole-plus-orbit design for m = 1 or m = k")
    if not (-1.0 < x12 < x11 < 1.0):
        raise ConfigurationError("need -1 < x12 < x11 < 1")
    R1 = _check_rotation(R1, m - 1, "R1")
    R2 = _check_rotation(R2, k - m, "R2")
    pts = np.zeros((k + 1, k))
    pts[:m, 0] = x11
    pts[:m, 1:m] = np.sqrt(1.0 - x11 ** 2) * (R1 @ regular_simplex(m - 1)).T
    pts[m:, 0] = x12
    pts[m:, m:] = np.sqrt(1.0 - x12 ** 2) * (R2 @ regular_simplex(k - m)).T
    return BallDesign(pts, np.full(k + 1, 1.0 / (k + 1)), two_orbit_tag(m))


def discretize_full_orbits(marginal, k: int, points_per_orbit=None,
                           rotations=None) -> BallDesign:
    """Replace each non-degenerate orbit of ``marginal`` by a finite point set.

    ``points_per_orbit`` is aligned with ``marginal.points``; entries for
    poles are ignored.  Supported counts: ``k`` (regular simplex) and
    ``2(k-1)`` (cross-polytope).
    """
    xs = np.asarray(marginal.points, dtype=float)
    ws = np.asarray(marginal.weights, dtype=float)
    if points_per_orbit is None:
        points_per_orbit = [k] * xs.size
    if len(points_per_orbit) != xs.size:
        raise ConfigurationError("points_per_orbit must match the marginal support")
    if rotations is None:
        rotations = [None] * xs.size
    all_pts, all_w = [], []
    for x, w, n, R in zip(xs, ws, points_per_orbit, rotations):
        if _is_pole(x) or k == 1:
            p = np.zeros((1, k))
            p[0, 0] = x
            all_pts.append(p)
            all_w.append([w])
            continue
        R = _check_rotation(R, k - 1, "rotation")
        if n == k:
            dirs = regular_simplex(k - 1)
        elif n == 2 * (k - 1):
            dirs = cross_polytope(k - 1)
        else:
            raise ConfigurationError(
                f"unsupported orbit point count {n} for k={k}; "
                f"use {k} (simplex) or {2 * (k - 1)} (cross-polytope)")
        all_pts.append(_orbit_points(x, k, R @ dirs))
        all_w.append(np.full(n, w / n))
    weights = np.concatenate(all_w)
    weights = weights / weights.sum()
    return BallDesign(np.vstack(all_pts), weights, FULL_ORBITS)


def simplex_design(k: int, rotation=None) -> BallDesign:
    """Equally weighted vertices of a regular simplex inscribed in the unit sphere."""
    R = _check_rotation(rotation, k, "rotation")
    pts = (R @ regular_simplex(k)).T
    return BallDesign(pts, np.full(k + 1, 1.0 / (k + 1)), FULL_SIMPLEX)


def sphere_points(k: int, n: int, seed=0) -> np.ndarray:
    """Quasi-uniform sample of ``n`` points on the unit sphere of R^k.

    k = 1: a uniform grid of the interval [-1, 1] (the whole design region);
    k = 2: equally spaced angles; k = 3: Fibonacci lattice; k > 3: seeded
    normalized Gaussian vectors.
    """
    if k == 1:
        return np.linspace(-1.0, 1.0, n).reshape(n, 1)
    if k == 2:
        t = 2.0 * np.pi * np.arange(n) / n
        return np.column_stack([np.cos(t), np.sin(t)])
    if k == 3:
        i = np.arange(n) + 0.5
        z = 1.0 - 2.0 * i / n
        phi = np.pi * (3.0 - np.sqrt(5.0)) * i
        r = np.sqrt(1.0 - z * z)
        return np.column_stack([z, r * np.cos(phi), r * np.sin(phi)])
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, k))
    return g / np.linalg.norm(g, axis=1, keepdims=True)
