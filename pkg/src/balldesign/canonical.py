"""Reduction of a general regression problem to its canonical form.

Any parameter vector ``beta`` on an ellipsoid ``{a + B u : |u| <= 1}`` is
equivalent to ``beta0' + beta1' * u1`` with ``beta1' >= 0`` on the unit
ball: the affine map is absorbed into the parameters and an orthogonal
matrix ``Q`` (first column = slope direction) rotates the slope onto the
first axis.  Designs are solved in canonical coordinates and mapped back
with ``x = a + B Q u``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, ContractViolation

BETA1_ZERO = 1e-12


@dataclass(frozen=True)
class Region:
    """Ellipsoid ``{center + matrix @ u : |u| <= 1}``."""

    center: np.ndarray
    matrix: np.ndarray

    def __post_init__(self):
        center = np.atleast_1d(np.asarray(self.center, dtype=float))
        matrix = np.atleast_2d(np.asarray(self.matrix, dtype=float))
        k = center.size
        if matrix.shape != (k, k):
            raise ConfigurationError(
                f"region matrix has shape {matrix.shape}, expected {(k, k)}")
        s = np.linalg.svd(matrix, compute_uv=False)
        if s.min() <= 1e-12 * max(s.max(), 1.0):
            raise ConfigurationError("region matrix is singular")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def ball(cls, center, radius=1.0):
        center = np.atleast_1d(np.asarray(center, dtype=float))
        return cls(center, float(radius) * np.eye(center.size))

    @classmethod
    def unit(cls, k):
        return cls(np.zeros(k), np.eye(k))

    @property
    def k(self):
        return self.center.size


@dataclass(frozen=True)
class CanonicalProblem:
    """Reduced problem ``beta0 + beta1 * x1`` on the unit ball.

    ``rotation`` maps canonical unit-ball coordinates to the (un-shifted)
    unit-ball coordinates of the original problem; ``region`` then maps the
    unit ball onto the original design region.
    """

    k: int
    beta0: float
    beta1: float
    rotation: np.ndarray = field(default=None, repr=False)
    region: Region = field(default=None, repr=False)

    def __post_init__(self):
        if self.k < 1:
            raise ConfigurationError("k must be at least 1")
        if self.beta1 < 0:
            raise ConfigurationError("beta1 must be non-negative in canonical form")
        if self.rotation is None:
            object.__setattr__(self, "rotation", np.eye(self.k))
        if self.region is None:
            object.__setattr__(self, "region", Region.unit(self.k))

    @classmethod
    def simple(cls, k, beta0, beta1):
        """Canonical problem on the unit ball with no rotation."""
        return cls(int(k), float(beta0), float(beta1))

    @property
    def beta(self):
        """Canonical parameter vector ``(beta0, beta1, 0, ..., 0)``."""
        out = np.zeros(self.k + 1)
        out[0], out[1] = self.beta0, self.beta1
        return out

    @property
    def is_constant(self):
        return self.beta1 == 0.0


def householder_to(d):
    """Orthogonal (symmetric) matrix mapping ``e1`` onto the unit vector ``d``."""
    d = np.asarray(d, dtype=float)
    k = d.size
    v = d.copy()
    v[0] -= 1.0
    nv = v @ v
    if nv < 1e-30:
        return np.eye(k)
    return np.eye(k) - 2.0 * np.outer(v, v) / nv


def reduce(beta, region: Region | None = None) -> CanonicalProblem:
    """Reduce ``beta`` (length ``k+1``) on ``region`` to canonical form.

    With ``x = a + B u`` the predictor is
    ``beta0 + s.a + (B^T s).u`` where ``s`` is the slope part of ``beta``.
    """
    beta = np.asarray(beta, dtype=float).ravel()
    if beta.size < 2:
        raise ConfigurationError("beta needs at least two entries (k >= 1)")
    k = beta.size - 1
    if region is None:
        region = Region.unit(k)
    elif region.k != k:
        raise ConfigurationError(f"region dimension {region.k} does not match k={k}")
    slope = beta[1:]
    beta0 = float(beta[0] + slope @ region.center)
    s = region.matrix.T @ slope
    beta1 = float(np.linalg.norm(s))
    if beta1 < BETA1_ZERO:
        return CanonicalProblem(k, beta0, 0.0, np.eye(k), region)
    return CanonicalProblem(k, beta0, beta1, householder_to(s / beta1), region)


def map_back(design, prob: CanonicalProblem):
    """Map a canonical unit-ball design into the original region."""
    from .geometry import BallDesign

    pts = np.asarray(design.points, dtype=float)
    if pts.shape[1] != prob.k:
        raise ContractViolation(f"design dimension {pts.shape[1]} != k={prob.k}")
    if np.any(np.linalg.norm(pts, axis=1) > 1.0 + 1e-12):
        raise ContractViolation("design points must lie in the unit ball")
    A = prob.region.matrix @ prob.rotation
    mapped = prob.region.center + pts @ A.T
    return BallDesign(mapped, design.weights, design.provenance, check_ball=False)


def to_canonical_points(points, prob: CanonicalProblem):
    """Inverse of :func:`map_back` for raw point arrays."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    A = prob.region.matrix @ prob.rotation
    return np.linalg.solve(A, (pts - prob.region.center).T).T
