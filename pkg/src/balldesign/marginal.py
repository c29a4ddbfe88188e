"""Optimal marginal designs on [-1, 1].

In canonical form the predictor is ``beta0 + beta1 * x1`` and a locally
D-optimal design is a two-point marginal design in ``x1`` combined with
uniform distributions on the orbits ``{x : x_1 = const, |x| = 1}``.  Write
``q(x) = lam(beta0 + beta1 x)``; with orbit positions ``x > y`` and weights
``1/2 - alpha``, ``1/2 + alpha`` the log determinant is

    log det = log(w1 w2 q(x) q(y) (x - y)^2)
              + (k - 1) log((q(x)(1-x^2) w1 + q(y)(1-y^2) w2) / (k - 1))

and the interior optimum is a stationary point of this function.  Poles
(``x = 1`` or ``y = -1``) are handled by the one-orbit equations.

Symmetric intensities (``lam(c + z) = lam(c - z)``) reduce the three
stationarity equations to one scalar equation in the half-distance ``r``
between the orbits in predictor units.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .canonical import CanonicalProblem
from .errors import (BoundaryFailure, ConfigurationError, ContractViolation,
                     NumericDomainError, SolverFailure)
from .intensity import MONOTONE, UNIMODAL

POLE_SHRINK = 1e-9
ESCAPE = 1e-9
NEWTON_H = 1e-7
NEWTON_TOL = 1e-12
RESIDUAL_TOL = 1e-10


class Case(str, enum.Enum):
    SIMPLEX = "simplex_beta1_zero"
    A = "a"
    B = "b"
    C = "c"
    C0 = "c0"
    C1 = "c1"
    C2 = "c2"
    THEOREM1 = "theorem1"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class MarginalDesign:
    """Marginal design on [-1, 1] with strictly decreasing support points."""

    points: np.ndarray
    weights: np.ndarray
    case: Case
    residual: float = 0.0
    iterations: int = 0
    bracket: tuple = None
    multiplicity: int = 1
    extra: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        pts = np.atleast_1d(np.asarray(self.points, dtype=float))
        w = np.atleast_1d(np.asarray(self.weights, dtype=float))
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "case", Case(self.case))
        if self.case == Case.SIMPLEX:
            return
        if pts.shape != w.shape or pts.size == 0:
            raise ContractViolation("marginal points and weights must match")
        if np.any(w <= 0) or abs(w.sum() - 1.0) > 1e-12:
            raise ContractViolation(f"marginal weights {w.tolist()} are not a distribution")
        if np.any(np.abs(pts) > 1.0 + 1e-12) or np.any(np.diff(pts) >= 0):
            raise ContractViolation(
                f"marginal points {pts.tolist()} must be strictly decreasing in [-1, 1]")

    @classmethod
    def simplex_marker(cls):
        """Marker for beta1 = 0: the optimum is an inscribed regular simplex."""
        return cls(np.empty(0), np.empty(0), Case.SIMPLEX)

    @property
    def x11(self):
        return float(self.points[0])

    @property
    def x12(self):
        return float(self.points[-1])

    @property
    def w1(self):
        return float(self.weights[0])

    @property
    def w2(self):
        return float(self.weights[-1])

    @property
    def alpha(self):
        return 0.5 - self.w1

    def report(self):
        return {"case": self.case.value, "points": self.points.tolist(),
                "weights": self.weights.tolist(), "residual": self.residual,
                "iterations": self.iterations,
                "bracket": None if self.bracket is None else list(self.bracket),
                "multiplicity": self.multiplicity}


@dataclass(frozen=True)
class SymmetricSolution:
    """Root ``r`` of the symmetric reduction and the implied design."""

    r: float
    c: float
    x: float
    y: float
    alpha: float
    residual: float
    bracket: tuple = None


# ---------------------------------------------------------------------------
# building blocks

def _q(model, prob, x):
    return np.asarray(model(prob.beta0 + prob.beta1 * np.asarray(x, dtype=float)), dtype=float)


def _rho(model, prob, x):
    return prob.beta1 * np.asarray(
        model.ratio(prob.beta0 + prob.beta1 * np.asarray(x, dtype=float)), dtype=float)


def _require_positive_slope(prob):
    if prob.beta1 <= 0.0:
        raise ContractViolation(
            "beta1 = 0: the intensity is constant, use the regular simplex design")


def _require_unimodal(model):
    if model.kind != UNIMODAL:
        raise ContractViolation(f"model {model.name!r} is not unimodal")


def system_residuals(model, prob: CanonicalProblem, x, y, alpha):
    """Stationarity equations of the two-orbit log determinant.

    Returns ``(F_x, F_y, F_alpha)`` for k >= 2 and ``(F_x, F_y)`` for
    k = 1 (weights fixed at 1/2).  ``F_alpha`` is minus the derivative of
    the log determinant with respect to ``alpha``.
    """
    k = prob.k
    qx, qy = _q(model, prob, [x, y])
    rx, ry = _rho(model, prob, [x, y])
    d = x - y
    f1 = rx + 2.0 / d
    f2 = ry - 2.0 / d
    if k == 1:
        return np.array([f1, f2])
    w1, w2 = 0.5 - alpha, 0.5 + alpha
    ax = qx * (1.0 - x * x)
    ay = qy * (1.0 - y * y)
    D = ax * w1 + ay * w2
    f1 += (k - 1) * qx * (rx * (1.0 - x * x) - 2.0 * x) * w1 / D
    f2 += (k - 1) * qy * (ry * (1.0 - y * y) - 2.0 * y) * w2 / D
    f3 = 1.0 / w1 - 1.0 / w2 + (k - 1) * (ax - ay) / D
    return np.array([f1, f2, f3])


def marginal_log_det(model, prob: CanonicalProblem, x, y, w1):
    """Log determinant of the block information matrix of a two-point marginal.

    Broadcasts over array arguments; returns ``-inf`` where singular.
    """
    k = prob.k
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    w1 = np.asarray(w1, dtype=float)
    w2 = 1.0 - w1
    qx = _q(model, prob, x)
    qy = _q(model, prob, y)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.log(w1 * w2 * qx * qy * (x - y) ** 2)
        if k > 1:
            c = (w1 * qx * (1.0 - x * x) + w2 * qy * (1.0 - y * y)) / (k - 1)
            out = out + (k - 1) * np.log(c)
    return np.where(np.isnan(out), -np.inf, out)


def marginal_det(model, prob, design: MarginalDesign):
    """Determinant of the block information matrix of ``design``."""
    xs, ws = design.points, design.weights
    q = _q(model, prob, xs)
    m0, m1, m2 = np.sum(ws * q), np.sum(ws * q * xs), np.sum(ws * q * xs * xs)
    det = m0 * m2 - m1 * m1
    if prob.k > 1:
        det *= (np.sum(ws * q * (1.0 - xs * xs)) / (prob.k - 1)) ** (prob.k - 1)
    return float(det)


# ---------------------------------------------------------------------------
# classification

def classify(model, prob: CanonicalProblem) -> Case:
    """Case label from the location of mode and threshold relative to [-1, 1].

    A missing threshold (custom models) is treated as lying outside [-1, 1].
    """
    _require_positive_slope(prob)
    if model.kind == MONOTONE:
        return Case.THEOREM1
    cq_mode = (model.mode - prob.beta0) / prob.beta1
    thr_outside = True
    if model.threshold is not None:
        thr_outside = not (-1.0 <= (model.threshold - prob.beta0) / prob.beta1 <= 1.0)
    if cq_mode > 1.0 and thr_outside:
        return Case.A
    if cq_mode < -1.0 and thr_outside:
        return Case.B
    return Case.C


# ---------------------------------------------------------------------------
# scalar root finding

def _polish(h, root, lo, hi):
    """One Newton step on ``h`` if it stays in the bracket and lowers ``|h|``."""
    f0 = h(root)
    step = 1e-7 * max(1.0, abs(root))
    a, b = max(lo, root - step), min(hi, root + step)
    if b <= a:
        return root, f0
    slope = (h(b) - h(a)) / (b - a)
    if slope == 0 or not np.isfinite(slope):
        return root, f0
    cand = root - f0 / slope
    if lo <= cand <= hi:
        f1 = h(cand)
        if abs(f1) < abs(f0):
            return cand, f1
    return root, f0


def _bracketed_root(h, lo, hi, what):
    flo, fhi = h(lo), h(hi)
    if not (np.isfinite(flo) and np.isfinite(fhi)):
        raise NumericDomainError(f"{what}: non-finite residual at bracket ends")
    if flo * fhi > 0:
        raise SolverFailure(f"{what}: residual has no sign change on [{lo}, {hi}]",
                            bracket=(lo, hi, flo, fhi))
    root = brentq(h, lo, hi, xtol=1e-15, rtol=8.9e-16, maxiter=500)
    root, res = _polish(h, root, lo, hi)
    return root, float(res), (lo, hi, flo, fhi)


# ---------------------------------------------------------------------------
# one pole plus one orbit

def pole_equation(model, prob: CanonicalProblem, pole_at: int):
    """Residual of the orbit equation for a design with a pole at ``pole_at``."""
    k = prob.k

    if pole_at == 1:
        if k == 1:
            return lambda x: float(_rho(model, prob, x)) - 2.0 / (1.0 - x)
        return lambda x: (float(_rho(model, prob, x))
                          - 2.0 * (1.0 + k * x) / (k * (1.0 - x * x)))
    if k == 1:
        return lambda x: float(_rho(model, prob, x)) + 2.0 / (1.0 + x)
    return lambda x: (float(_rho(model, prob, x))
                      - 2.0 * (-1.0 + k * x) / (k * (1.0 - x * x)))


def solve_pole_plus_orbit(model, prob: CanonicalProblem, pole_at: int = 1,
                          case: Case = None) -> MarginalDesign:
    """Design with a pole at ``pole_at`` (+1 or -1) and one orbit.

    The pole carries weight ``1/(k+1)``.  For k = 1 the orbit may collapse
    onto the opposite pole when the orbit equation has no root.
    """
    _require_positive_slope(prob)
    if pole_at not in (1, -1):
        raise ConfigurationError("pole_at must be +1 or -1")
    k = prob.k
    if case is None:
        case = Case.THEOREM1 if model.kind == MONOTONE else (Case.A if pole_at == 1 else Case.B)
    h = pole_equation(model, prob, pole_at)
    pw, ow = 1.0 / (k + 1), k / (k + 1)
    if pole_at == 1:
        lo, hi = -1.0 + POLE_SHRINK, 1.0 - POLE_SHRINK
        if k == 1 and h(-1.0) <= 0.0:
            return MarginalDesign([1.0, -1.0], [0.5, 0.5], case, residual=0.0,
                                  bracket=(-1.0, hi, h(-1.0), h(hi)))
        x, res, br = _bracketed_root(h, lo, hi, "pole +1 orbit equation")
        return MarginalDesign([1.0, x], [pw, ow], case, residual=abs(res), bracket=br)
    lo, hi = -1.0 + POLE_SHRINK, 1.0 - POLE_SHRINK
    if k == 1 and h(1.0) >= 0.0:
        return MarginalDesign([1.0, -1.0], [0.5, 0.5], case, residual=0.0,
                              bracket=(lo, 1.0, h(lo), h(1.0)))
    x, res, br = _bracketed_root(h, lo, hi, "pole -1 orbit equation")
    return MarginalDesign([x, -1.0], [ow, pw], case, residual=abs(res), bracket=br)


def pole_indicators(model, prob: CanonicalProblem):
    """Outward log-det derivatives at the two pole designs.

    Returns ``(g_up, g_down, up, down)``: ``g_up = F_x`` at the design with a
    pole at +1, ``g_down = F_y`` at the design with a pole at -1.  The pole
    design at +1 is optimal iff ``g_up >= 0`` (moving the orbit inward from
    the pole cannot increase the determinant); likewise ``g_down <= 0``.
    """
    up = solve_pole_plus_orbit(model, prob, 1, case=Case.C1)
    down = solve_pole_plus_orbit(model, prob, -1, case=Case.C2)
    g_up = system_residuals(model, prob, 1.0, up.x12, up.alpha)[0]
    g_down = system_residuals(model, prob, down.x11, -1.0, down.alpha)[1]
    return float(g_up), float(g_down), up, down


# ---------------------------------------------------------------------------
# symmetric reduction

def alpha_plus(r, c, beta1, k):
    """Admissible root of the weight equation for given half-distance ``r``."""
    if c == 0.0 or r == 0.0:
        return 0.0
    A = beta1 * beta1 - c * c - r * r
    s = np.sqrt(A * A + 4.0 * (k * k - 1) * c * c * r * r)
    if A >= 0.0:
        return (k - 1) * c * r / (A + s)
    return (s - A) / (4.0 * (k + 1) * c * r)


def alpha_minus(r, c, beta1, k):
    """The other root of the weight equation (never in (-1/2, 1/2) for r in range)."""
    A = beta1 * beta1 - c * c - r * r
    s = np.sqrt(A * A + 4.0 * (k * k - 1) * c * c * r * r)
    return (-A - s) / (4.0 * (k + 1) * c * r)


def symmetric_rhs(r, c, beta1, k):
    """Right side of the scalar equation ``lam'/lam(c_lam + r) = rhs(r)``.

    Evaluated through the admissible weight root, which keeps the
    expression free of the removable singularity at ``r = beta1 - |c|``.
    """
    if k == 1:
        return -1.0 / r
    A = beta1 * beta1 - c * c - r * r
    B = 4.0 * (k * k - 1) * c * c * r * r
    s = np.sqrt(A * A + B)
    # s - A, i.e. 4 (k+1) c r alpha_plus, without cancellation
    s_minus_a = B / (s + A) if A >= 0.0 else s - A
    den = A + s_minus_a / (k + 1)
    four_c_alpha = s_minus_a / ((k + 1) * r)
    return -((k - 1) * (-2.0 * r + four_c_alpha) / den + 2.0 / r) / (k + 1)


def _rhs_closed_raw(r, c, beta1, k):
    b2, c2, r2 = beta1 * beta1, c * c, r * r
    root = np.sqrt((b2 - c2 - r2) ** 2 + 4.0 * (k * k - 1) * c2 * r2)
    num = (-2.0 * k * r2 * (b2 + c2 - r2) + (b2 - c2 - r2) ** 2 - 4.0 * c2 * r2
           + (b2 - c2 + r2) * root)
    den = (k + 1) * r * (r + c - beta1) * (r + c + beta1) * (r - c + beta1) * (r - c - beta1)
    return -num / den


def symmetric_rhs_closed(r, c, beta1, k):
    """Fully simplified rational form of :func:`symmetric_rhs`.

    It has a removable singularity at ``r = beta1 - |c|``; within 1e-8 of
    that point the value is the average of two one-sided evaluations at
    offsets of +-1e-6.
    """
    if k == 1:
        return -1.0 / r
    if c == 0.0:
        return -2.0 * (beta1 ** 2 - k * r * r) / ((k + 1) * r * (beta1 ** 2 - r * r))
    r_sing = beta1 - abs(c)
    if abs(r - r_sing) < 1e-8:
        return 0.5 * (_rhs_closed_raw(r_sing - 1e-6, c, beta1, k)
                      + _rhs_closed_raw(r_sing + 1e-6, c, beta1, k))
    return _rhs_closed_raw(r, c, beta1, k)


def solve_symmetric(model, prob: CanonicalProblem) -> SymmetricSolution:
    """Solve the scalar symmetric equation for ``r`` and recover ``x, y, alpha``.

    For k >= 2 the root is searched on ``(0, |c| + beta1)``, where the
    right side increases from -inf to +inf.  For k = 1 the right side is
    ``-1/r`` and the bracket is widened until the residual changes sign.
    """
    if not model.symmetric:
        raise ContractViolation(f"model {model.name!r} is not symmetric")
    _require_unimodal(model)
    _require_positive_slope(prob)
    k, b1 = prob.k, prob.beta1
    c_lam = model.center
    c = c_lam - prob.beta0

    def h(r):
        return float(model.ratio(c_lam + r)) - symmetric_rhs(r, c, b1, k)

    lo = POLE_SHRINK
    if k == 1:
        hi = max(abs(c) + b1, 1.0)
        while h(hi) > 0.0:
            hi *= 2.0
            if hi > 1e4:
                raise SolverFailure("k=1 symmetric equation has no root below 1e4",
                                    bracket=(lo, hi, h(lo), h(hi)))
    else:
        hi = abs(c) + b1 - POLE_SHRINK
    r, res, br = _bracketed_root(h, lo, hi, "symmetric equation")
    alpha = 0.0 if c == 0.0 else float(alpha_plus(r, c, b1, k))
    if k == 1:
        alpha = 0.0
    return SymmetricSolution(r, c, (c + r) / b1, (c - r) / b1, alpha, abs(res), br)


# ---------------------------------------------------------------------------
# damped Newton for the two- and three-equation systems

def _fd_jacobian(fun, z, f, h=NEWTON_H):
    n = z.size
    J = np.empty((f.size, n))
    for j in range(n):
        zj = z.copy()
        zj[j] += h
        J[:, j] = (fun(zj) - f) / h
    return J


def damped_newton(fun, z0, valid, tol=NEWTON_TOL, maxiter=100, h=NEWTON_H):
    """Newton iteration with forward-difference Jacobian and step halving.

    ``valid(z)`` rejects trial points outside the admissible domain.
    Returns ``(z, f, iterations, converged)``.
    """
    z = np.asarray(z0, dtype=float).copy()
    f = fun(z)
    if not np.all(np.isfinite(f)):
        return z, f, 0, False
    for it in range(maxiter):
        if np.max(np.abs(f)) <= tol:
            return z, f, it, True
        J = _fd_jacobian(fun, z, f, h)
        try:
            dz = np.linalg.solve(J, -f)
        except np.linalg.LinAlgError:
            dz = np.linalg.lstsq(J, -f, rcond=None)[0]
        nf = np.linalg.norm(f)
        t = 1.0
        while t > 1e-12:
            zn = z + t * dz
            if valid(zn):
                fn = fun(zn)
                if np.all(np.isfinite(fn)) and np.linalg.norm(fn) < nf:
                    break
            t *= 0.5
        else:
            return z, f, it, bool(np.max(np.abs(f)) <= RESIDUAL_TOL)
        z, f = zn, fn
    return z, f, maxiter, bool(np.max(np.abs(f)) <= RESIDUAL_TOL)


def _grid_candidates(model, prob, n_pos=41, n_alpha=21, alpha=None, top=5):
    """Best grid points of the log determinant, as (x, y, alpha) rows."""
    xs = np.linspace(-1.0, 1.0, n_pos)
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    keep = X > Y
    X, Y = X[keep], Y[keep]
    if alpha is not None:
        alphas = np.array([alpha])
    elif prob.k == 1:
        alphas = np.array([0.0])
    else:
        alphas = np.linspace(-0.5, 0.5, n_alpha + 2)[1:-1]
    XX = np.repeat(X[:, None], alphas.size, axis=1)
    YY = np.repeat(Y[:, None], alphas.size, axis=1)
    AA = np.broadcast_to(alphas, XX.shape)
    L = marginal_log_det(model, prob, XX, YY, 0.5 - AA).ravel()
    order = np.argsort(-L, kind="stable")
    flat = np.column_stack([XX.ravel(), YY.ravel(), AA.ravel()])
    picked = []
    for i in order:
        if not np.isfinite(L[i]):
            break
        cand = flat[i]
        if all(np.max(np.abs(cand - p)) > 0.15 for p in picked):
            picked.append(cand)
        if len(picked) >= top:
            break
    return picked, float(L[order[0]])


def _interior(z, k):
    x, y = z[0], z[1]
    ok = -1.0 < y < x < 1.0
    if k > 1:
        ok = ok and -0.5 < z[2] < 0.5
    return ok


def _newton_interior(model, prob, starts):
    """Run damped Newton from each start; return distinct interior roots."""
    k = prob.k
    if k == 1:
        fun = lambda z: system_residuals(model, prob, z[0], z[1], 0.0)
    else:
        fun = lambda z: system_residuals(model, prob, z[0], z[1], z[2])
    roots = []
    total_it = 0
    for s in starts:
        z0 = np.array(s[:2] if k == 1 else s, dtype=float)
        z0[0] = min(z0[0], 1.0 - 0.01)
        z0[1] = max(z0[1], -1.0 + 0.01)
        if z0[0] <= z0[1]:
            continue
        z, f, it, ok = damped_newton(fun, z0, lambda t: _interior(t, k))
        total_it += it
        if ok and _interior(z, k):
            if all(np.max(np.abs(z - r[0])) > 1e-6 for r in roots):
                roots.append((z, float(np.max(np.abs(f)))))
    return roots, total_it


def _c0_design(model, prob, z, res, iterations, multiplicity=1):
    alpha = 0.0 if prob.k == 1 else float(z[2])
    return MarginalDesign([z[0], z[1]], [0.5 - alpha, 0.5 + alpha], Case.C0,
                          residual=res, iterations=iterations, multiplicity=multiplicity)


def _profile_alpha_root(model, prob, n_scan=49):
    """Interior stationary point found through the profile in ``alpha``.

    For small slopes the determinant is nearly flat along a curve of
    designs and Newton on the full system crawls.  Holding ``alpha`` fixed
    leaves a well-posed problem in the positions; at its solution the third
    residual is minus the derivative of the profiled log determinant, so
    its sign change brackets the optimal ``alpha``.  Returns
    ``(x, y, alpha)`` or None.
    """
    cache = {}

    def positions(alpha, start):
        if alpha not in cache:
            try:
                cache[alpha] = solve_fixed_alpha(model, prob, alpha, start=start)
            except BoundaryFailure:
                try:
                    cache[alpha] = solve_fixed_alpha(model, prob, alpha)
                except BoundaryFailure:
                    cache[alpha] = None
        return cache[alpha]

    def third(alpha, start):
        xy = positions(alpha, start)
        return None if xy is None else system_residuals(model, prob, xy[0], xy[1], alpha)[2]

    alphas = np.linspace(-0.49, 0.49, n_scan)
    prev_a, prev_g, prev_xy = None, None, None
    for a in alphas:
        g = third(float(a), prev_xy)
        xy = cache[float(a)]
        if g is not None and prev_g is not None and prev_g < 0.0 <= g:
            lo, hi = prev_a, float(a)
            start = prev_xy
            h = lambda t: third(t, start)
            try:
                alpha = brentq(h, lo, hi, xtol=1e-15, rtol=8.9e-16)
            except (ValueError, TypeError):
                return None
            x, y = positions(alpha, start)
            return x, y, alpha
        prev_a, prev_g, prev_xy = float(a), g, xy
    return None


def solve_general_c(model, prob: CanonicalProblem) -> MarginalDesign:
    """Optimal marginal design in case (c) without using symmetry.

    The pole designs are tested first: a pole at +1 (case c1) is optimal
    when the outward derivative of the log determinant at that design is
    non-negative, and likewise for -1 (case c2).  Otherwise the two
    interior orbits are found by damped Newton on the stationarity
    equations, started from the best points of a coarse (x, y, alpha) grid.
    """
    _require_unimodal(model)
    _require_positive_slope(prob)
    g_up, g_down, up, down = pole_indicators(model, prob)
    if g_up >= 0.0 or g_down <= 0.0:
        cands = []
        if g_up >= 0.0:
            cands.append(up)
        if g_down <= 0.0:
            cands.append(down)
        best = max(cands, key=lambda d: marginal_det(model, prob, d))
        return best

    starts, _ = _grid_candidates(model, prob)
    roots, iters = _newton_interior(model, prob, starts)
    if not roots and prob.k > 1:
        z = _profile_alpha_root(model, prob)
        if z is not None:
            res = float(np.max(np.abs(system_residuals(model, prob, *z))))
            roots = [(np.asarray(z), res)]
    if not roots:
        raise SolverFailure("Newton did not converge to an interior solution",
                            candidate=starts[0] if starts else None)
    logdets = [float(marginal_log_det(model, prob, z[0], z[1],
                                      0.5 - (z[2] if prob.k > 1 else 0.0)))
               for z, _ in roots]
    i = int(np.argmax(logdets))
    z, res = roots[i]
    if res > RESIDUAL_TOL:
        raise SolverFailure(f"interior residual {res:.3e} above tolerance", candidate=z)
    return _c0_design(model, prob, z, res, iters, multiplicity=len(roots))


def solve_fixed_alpha(model, prob: CanonicalProblem, alpha, start=None):
    """Orbit positions maximizing the determinant for fixed weights.

    Solves the two position equations with ``alpha`` held fixed and returns
    ``(x, y)`` with ``-1 < y < x < 1``.  Raises :class:`BoundaryFailure`
    when no interior stationary point is reached.
    """
    _require_unimodal(model)
    _require_positive_slope(prob)
    if not (-0.5 < alpha < 0.5):
        raise ContractViolation("alpha must lie strictly inside (-1/2, 1/2)")
    if prob.k == 1 and alpha != 0.0:
        raise ContractViolation("for k = 1 the weights are fixed at 1/2")

    fun = lambda z: system_residuals(model, prob, z[0], z[1], alpha)[:2]
    valid = lambda z: -1.0 < z[1] < z[0] < 1.0
    if start is not None:
        starts = [np.asarray(start, dtype=float)]
    else:
        starts = [s[:2] for s in _grid_candidates(model, prob, alpha=alpha, top=3)[0]]
    for s in starts:
        z0 = np.array([min(s[0], 0.99), max(s[1], -0.99)])
        if z0[0] <= z0[1]:
            continue
        z, f, it, ok = damped_newton(fun, z0, valid)
        if ok and valid(z) and np.max(np.abs(f)) <= RESIDUAL_TOL:
            return float(z[0]), float(z[1])
    raise BoundaryFailure(f"no interior solution for fixed alpha={alpha}")


# ---------------------------------------------------------------------------
# orchestration

def _symmetric_case_c(model, prob):
    sol = solve_symmetric(model, prob)
    if -1.0 < sol.y and sol.x < 1.0:
        alpha = sol.alpha
        res = float(np.max(np.abs(system_residuals(model, prob, sol.x, sol.y, alpha))))
        d = MarginalDesign([sol.x, sol.y], [0.5 - alpha, 0.5 + alpha], Case.C0,
                           residual=res, bracket=sol.bracket)
        object.__setattr__(d, "extra", {"r": sol.r, "r_residual": sol.residual})
        return d
    if sol.c >= 0.0:
        return solve_pole_plus_orbit(model, prob, 1, case=Case.C1)
    return solve_pole_plus_orbit(model, prob, -1, case=Case.C2)


def _pole_prediction_holds(model, prob, case):
    """Whether the pole design named by case (a) or (b) is stationary-optimal."""
    g_up, g_down, _, _ = pole_indicators(model, prob)
    return g_up >= 0.0 if case == Case.A else g_down <= 0.0


def optimal_marginal(model, prob: CanonicalProblem) -> MarginalDesign:
    """Locally D-optimal marginal design for the canonical problem."""
    if prob.beta1 < 0:
        raise ConfigurationError("beta1 must be non-negative")
    if prob.beta1 == 0.0:
        return MarginalDesign.simplex_marker()
    case = classify(model, prob)
    if case == Case.THEOREM1:
        return solve_pole_plus_orbit(model, prob, 1, case=Case.THEOREM1)
    if case in (Case.A, Case.B):
        if not model.symmetric and not _pole_prediction_holds(model, prob, case):
            # mode and threshold on opposite sides of [-1, 1]: the predicted
            # pole can lose to the opposite one, so decide numerically
            return solve_general_c(model, prob)
        pole = 1 if case == Case.A else -1
        return solve_pole_plus_orbit(model, prob, pole, case=case)
    if model.symmetric:
        return _symmetric_case_c(model, prob)
    return solve_general_c(model, prob)


def grid_oracle(model, prob: CanonicalProblem, n_pos: int = 401, n_wt: int = 101):
    """Brute-force maximizer of the block determinant over two-point designs.

    Positions run over an ``n_pos`` grid of [-1, 1] (pairs with x > y),
    ``w1`` over ``n_wt`` interior points of an equispaced grid of (0, 1).
    First index wins ties.
    """
    if n_pos < 21 or n_wt < 11:
        raise ConfigurationError("grid oracle needs n_pos >= 21 and n_wt >= 11")
    k = prob.k
    xs = np.linspace(-1.0, 1.0, n_pos)
    i, j = np.triu_indices(n_pos, k=1)
    X, Y = xs[j], xs[i]
    qx, qy = _q(model, prob, X), _q(model, prob, Y)
    upper = qx * qy * (X - Y) ** 2
    ax, ay = qx * (1.0 - X * X), qy * (1.0 - Y * Y)
    weights = np.linspace(0.0, 1.0, n_wt + 2)[1:-1]
    best, best_val = None, -np.inf
    for w in weights:
        det = w * (1.0 - w) * upper
        if k > 1:
            det = det * ((w * ax + (1.0 - w) * ay) / (k - 1)) ** (k - 1)
        idx = int(np.argmax(det))
        if det[idx] > best_val:
            best_val = float(det[idx])
            best = (X[idx], Y[idx], w)
    x, y, w = best
    case = Case.C1 if x == 1.0 else (Case.C2 if y == -1.0 else Case.C0)
    d = MarginalDesign([x, y], [w, 1.0 - w], case)
    object.__setattr__(d, "extra", {"det": best_val, "step": xs[1] - xs[0]})
    return d


def region_boundaries(model, k: int, beta1: float, scan: int = 201):
    """Interval of ``-beta0`` on which the optimum has two interior orbits.

    The ends are the roots in ``beta0`` of the pole indicators (see
    :func:`pole_indicators`), located by scanning and then by Brent's
    method to 1e-12.
    """
    _require_unimodal(model)
    if beta1 <= 0:
        raise ConfigurationError("beta1 must be positive")
    marks = [model.mode] + ([model.threshold] if model.threshold is not None else [])
    lo_b0, hi_b0 = min(marks) - 1.5 * beta1, max(marks) + 1.5 * beta1
    grid = np.linspace(lo_b0, hi_b0, scan)

    def ind(b0):
        g_up, g_down, _, _ = pole_indicators(model, CanonicalProblem.simple(k, b0, beta1))
        return g_up, g_down

    vals = np.array([ind(b) for b in grid])
    inside = (vals[:, 0] < 0) & (vals[:, 1] > 0)
    if not inside.any() or inside.all():
        raise ConfigurationError(
            f"two-orbit region not found for {model.name}, k={k}, beta1={beta1}")
    # c1 side: pole at +1 optimal for small beta0; c2 side: pole at -1 for large beta0
    first = int(np.argmax(inside))
    last = int(len(inside) - 1 - np.argmax(inside[::-1]))
    if first == 0 or last == len(grid) - 1:
        raise ConfigurationError("two-orbit region extends past the scan range")
    b_up = brentq(lambda b: ind(b)[0], grid[first - 1], grid[first], xtol=1e-13)
    b_down = brentq(lambda b: ind(b)[1], grid[last], grid[last + 1], xtol=1e-13)
    return -b_down, -b_up
