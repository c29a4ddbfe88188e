"""Minimally supported exact designs for the two-orbit case and efficiency sweeps.

Inside the region where the optimal design has two interior orbits, no
design with ``k + 1`` equally weighted points is optimal in general.  Three
substitutes are compared with the optimum:

``frozen_boundary``
    the pole-plus-simplex designs that are optimal at the two region
    boundaries, kept unchanged and evaluated at the current ``beta0``
    (the better of the two is used);
``rounded_weights``
    the optimal orbit positions with the orbit weights rounded to
    ``m/(k+1)`` and ``(k+1-m)/(k+1)``, discretized by two simplices on
    orthogonal sub-spheres;
``fixed_weights``
    the same split with orbit positions re-optimized for the fixed weights,
    using the best admissible ``m``.

Two efficiencies are reported for the split designs.  The orbit-level
efficiency compares the design with uniform orbits and the rounded weights
to the optimum; it is the quantity the fixed-weight equations optimize.
The exact efficiency uses the information matrix of the ``k + 1`` points
themselves.  It is never larger, because the split replaces the common
orbit variance by two unequal ones with the same mean (AM-GM), and the two
agree when the weights satisfy the third stationarity equation.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .canonical import CanonicalProblem, map_back, reduce
from .errors import (BallDesignError, BoundaryFailure, ConfigurationError,
                     ContractViolation)
from .geometry import (BallDesign, discretize_full_orbits, discretize_pole_orbit,
                       random_rotation, simplex_design, two_orbit_min_support)
from .information import d_criterion, info_matrix
from .marginal import (Case, MarginalDesign, marginal_det, optimal_marginal,
                       region_boundaries, solve_fixed_alpha,
                       solve_pole_plus_orbit)

OPTIMAL = "optimal"
FROZEN = "frozen_boundary"
ROUNDED = "rounded_weights"
FIXED = "fixed_weights"
STRATEGIES = (OPTIMAL, FROZEN, ROUNDED, FIXED)
CSV_HEADER = ("beta0_neg", "strategy", "m", "case", "x11", "x12", "w1", "efficiency", "flag")
EDGE_NUDGE = 1e-9
ORBIT = "orbit"
EXACT = "exact"
EVALUATIONS = (ORBIT, EXACT)


@dataclass(frozen=True)
class ExactResult:
    """An exact design together with the marginal quantities describing it."""

    design: BallDesign
    x11: float
    x12: float
    w1: float
    m: int = None
    efficiency: float = None
    exact_efficiency: float = None

    def value(self, evaluate):
        return self.efficiency if evaluate == ORBIT else self.exact_efficiency


@dataclass(frozen=True)
class SweepRow:
    beta0_neg: float
    strategy: str
    efficiency: float
    x11: float
    x12: float
    w1: float
    m: int = None
    case: str = ""
    flag: str = ""

    def as_list(self):
        return [self.beta0_neg, self.strategy, self.m, self.case, self.x11, self.x12,
                self.w1, self.efficiency, self.flag]


def _require_c0(marg):
    if marg.case != Case.C0:
        raise ContractViolation(
            f"beta0 is outside the two-orbit region (optimal case {marg.case.value})")


def _ratio_to_eff(det, det_opt, k):
    eff = (max(det, 0.0) / det_opt) ** (1.0 / (k + 1))
    return 1.0 if 1.0 < eff <= 1.0 + 1e-10 else float(eff)


def _efficiency(design, model, prob, marg):
    """Efficiency of a finite design against the optimal marginal design."""
    det = d_criterion(info_matrix(design, model, prob.beta))
    return _ratio_to_eff(det, marginal_det(model, prob, marg), prob.k)


def _orbit_efficiency(x11, x12, w1, model, prob, marg):
    cand = MarginalDesign([x11, x12], [w1, 1.0 - w1], Case.C0)
    return _ratio_to_eff(marginal_det(model, prob, cand), marginal_det(model, prob, marg), prob.k)


@dataclass(frozen=True)
class DesignSolution:
    """Optimal design in canonical and original coordinates."""

    problem: CanonicalProblem
    marginal: MarginalDesign
    canonical: BallDesign
    design: BallDesign


def optimal_design(model, beta, region=None, seed=None) -> DesignSolution:
    """Solve for the optimal design of ``beta`` on ``region`` and discretize it.

    Pole-plus-orbit optima become ``k + 1`` equally weighted points; two
    interior orbits are each replaced by a regular simplex of ``k`` points.
    ``seed`` draws random orientations for the simplices (identity if None).
    """
    prob = reduce(beta, region)
    k = prob.k
    marg = optimal_marginal(model, prob)
    rot = (lambda n: None) if seed is None else (lambda n: random_rotation(n, seed))
    if marg.case == Case.SIMPLEX:
        canon = simplex_design(k, rot(k))
    elif marg.case == Case.C0:
        canon = discretize_full_orbits(marg, k, rotations=[rot(k - 1), rot(k - 1)])
    else:
        canon = discretize_pole_orbit(marg, k, rot(k - 1) if k > 1 else None)
    return DesignSolution(prob, marg, canon, map_back(canon, prob))


@lru_cache(maxsize=64)
def _boundary_designs(model, k, beta1):
    """Pole-plus-orbit designs optimal at the two ends of the two-orbit region."""
    lo, hi = region_boundaries(model, k, beta1)
    # -beta0 = hi is the pole-at-+1 side, -beta0 = lo the pole-at--1 side
    up = solve_pole_plus_orbit(model, CanonicalProblem.simple(k, -hi, beta1), 1, case=Case.C1)
    down = solve_pole_plus_orbit(model, CanonicalProblem.simple(k, -lo, beta1), -1, case=Case.C2)
    return (lo, hi), up, down


def frozen_boundary(model, k, beta1, beta0, marg=None) -> ExactResult:
    prob = CanonicalProblem.simple(k, beta0, beta1)
    marg = marg if marg is not None else optimal_marginal(model, prob)
    _, up, down = _boundary_designs(model, k, float(beta1))
    best = None
    for frozen in (up, down):
        design = discretize_pole_orbit(frozen, k)
        eff = _efficiency(design, model, prob, marg)
        if best is None or eff > best.efficiency:
            best = ExactResult(design, frozen.x11, frozen.x12, frozen.w1, None, eff, eff)
    return best


def strategy_frozen_boundary(model, k, beta1, beta0) -> BallDesign:
    """Better of the two boundary pole-plus-simplex designs at ``beta0``."""
    return frozen_boundary(model, k, beta1, beta0).design


def _rounded_m(marg, model, prob):
    k = prob.k
    raw = marg.w1 * (k + 1)
    frac = raw - np.floor(raw)
    if abs(frac - 0.5) < 1e-12:
        # tie: larger weight on the orbit nearer the intensity mode
        x_mode = (model.mode - prob.beta0) / prob.beta1
        m = int(np.ceil(raw)) if abs(marg.x11 - x_mode) <= abs(marg.x12 - x_mode) \
            else int(np.floor(raw))
    else:
        m = int(np.floor(raw + 0.5))
    return int(np.clip(m, 2, k - 1))


def rounded_weights(model, k, beta1, beta0, marg=None) -> ExactResult:
    if k < 3:
        raise ConfigurationError("two-orbit exact designs need k >= 3")
    prob = CanonicalProblem.simple(k, beta0, beta1)
    marg = marg if marg is not None else optimal_marginal(model, prob)
    _require_c0(marg)
    m = _rounded_m(marg, model, prob)
    w1 = m / (k + 1)
    design = two_orbit_min_support(marg.x11, marg.x12, m, k)
    return ExactResult(design, marg.x11, marg.x12, w1, m,
                       _orbit_efficiency(marg.x11, marg.x12, w1, model, prob, marg),
                       _efficiency(design, model, prob, marg))


def strategy_rounded_weights(model, k, beta1, beta0) -> BallDesign:
    """Optimal orbit positions with weights rounded to multiples of ``1/(k+1)``."""
    return rounded_weights(model, k, beta1, beta0).design


def fixed_weights(model, k, beta1, beta0, m=None, marg=None) -> ExactResult:
    if k < 3:
        raise ConfigurationError("two-orbit exact designs need k >= 3")
    prob = CanonicalProblem.simple(k, beta0, beta1)
    marg = marg if marg is not None else optimal_marginal(model, prob)
    _require_c0(marg)
    if m is not None and not (2 <= m <= k - 1):
        raise ConfigurationError(f"m must lie in [2, {k - 1}]")
    best = None
    for mm in ([m] if m is not None else range(2, k)):
        alpha = 0.5 - mm / (k + 1)
        try:
            x, y = solve_fixed_alpha(model, prob, alpha, start=marg.points)
        except BoundaryFailure:
            try:
                x, y = solve_fixed_alpha(model, prob, alpha)
            except BoundaryFailure:
                continue
        design = two_orbit_min_support(x, y, mm, k)
        eff = _orbit_efficiency(x, y, mm / (k + 1), model, prob, marg)
        if best is None or eff > best.efficiency:
            best = ExactResult(design, x, y, mm / (k + 1), mm, eff,
                               _efficiency(design, model, prob, marg))
    if best is None:
        raise BoundaryFailure(f"no admissible m gives interior orbits at beta0={beta0}")
    return best


def strategy_fixed_weights(model, k, beta1, beta0, m=None) -> BallDesign:
    """Orbit positions optimized for weights ``m/(k+1)``, best ``m`` if not given."""
    return fixed_weights(model, k, beta1, beta0, m).design


# ---------------------------------------------------------------------------
# sweeps

def _parse_strategies(strategies):
    out = []
    for s in strategies:
        if s not in STRATEGIES:
            raise ConfigurationError(f"unknown strategy {s!r}; choose from {', '.join(STRATEGIES)}")
        out.append(s)
    return out


def _rows_at(model, k, beta1, beta0_neg, strategies, evaluate):
    beta0 = -beta0_neg
    prob = CanonicalProblem.simple(k, beta0, beta1)
    try:
        marg = optimal_marginal(model, prob)
    except BallDesignError as exc:
        return [SweepRow(beta0_neg, s, float("nan"), float("nan"), float("nan"),
                         float("nan"), None, "", f"failed:{type(exc).__name__}")
                for s in strategies]
    rows = []
    for s in strategies:
        try:
            if s == OPTIMAL:
                rows.append(SweepRow(beta0_neg, s, 1.0, marg.x11, marg.x12, marg.w1,
                                     None, marg.case.value))
                continue
            if s == FROZEN:
                r = frozen_boundary(model, k, beta1, beta0, marg)
            elif s == ROUNDED:
                r = rounded_weights(model, k, beta1, beta0, marg)
            else:
                r = fixed_weights(model, k, beta1, beta0, marg=marg)
            rows.append(SweepRow(beta0_neg, s, r.value(evaluate), r.x11, r.x12, r.w1, r.m,
                                 marg.case.value))
        except BallDesignError as exc:
            rows.append(SweepRow(beta0_neg, s, float("nan"), float("nan"), float("nan"),
                                 float("nan"), None, marg.case.value,
                                 f"failed:{type(exc).__name__}"))
    return rows


def efficiency_sweep(model, k, beta1, beta0_range=None, steps=201,
                     strategies=STRATEGIES, workers=1, evaluate=ORBIT):
    """Efficiency of each strategy over an equispaced grid of ``-beta0``.

    ``beta0_range`` defaults to the two-orbit region.  Grid ends lying on a
    region boundary are moved ``1e-9`` inward.  Points where a solver fails
    produce rows with a ``failed:<error>`` flag.  Rows come out in
    ascending ``-beta0`` order, then in the order of ``strategies``.
    ``evaluate`` selects the orbit-level or the exact efficiency of the
    split designs.
    """
    if evaluate not in EVALUATIONS:
        raise ConfigurationError(f"evaluate must be one of {EVALUATIONS}")
    if steps < 2:
        raise ConfigurationError("steps must be at least 2")
    strategies = _parse_strategies(strategies)
    needs_region = beta0_range is None or any(s != OPTIMAL for s in strategies)
    region = region_boundaries(model, k, beta1) if needs_region else None
    lo, hi = beta0_range if beta0_range is not None else region
    if not lo < hi:
        raise ConfigurationError("beta0 range must be increasing")
    grid = np.linspace(lo, hi, steps)
    if region is not None:
        for i in (0, -1):
            if abs(grid[i] - region[0]) < EDGE_NUDGE:
                grid[i] = region[0] + EDGE_NUDGE
            elif abs(grid[i] - region[1]) < EDGE_NUDGE:
                grid[i] = region[1] - EDGE_NUDGE
    job = lambda b: _rows_at(model, k, beta1, float(b), strategies, evaluate)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(job, grid))
    else:
        chunks = [job(b) for b in grid]
    return [row for chunk in chunks for row in chunk]


def envelope_minimum(rows, strategy):
    """Smallest value over ``-beta0`` of ``max(frozen_boundary, strategy)``."""
    by_b = {}
    for r in rows:
        if r.strategy in (FROZEN, strategy) and not r.flag:
            by_b.setdefault(r.beta0_neg, []).append(r.efficiency)
    return min(max(v) for v in by_b.values())


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def write_sweep_csv(rows, stream=None):
    """Write sweep rows as CSV (17 significant digits, LF line endings).

    Returns the text when ``stream`` is None.
    """
    buf = io.StringIO() if stream is None else stream
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([_fmt(v) for v in r.as_list()])
    return buf.getvalue() if stream is None else None


def read_sweep_csv(path):
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        for rec in csv.DictReader(fh):
            rows.append(SweepRow(float(rec["beta0_neg"]), rec["strategy"],
                                 float(rec["efficiency"]), float(rec["x11"]),
                                 float(rec["x12"]), float(rec["w1"]),
                                 int(rec["m"]) if rec["m"] else None, rec["case"], rec["flag"]))
    return rows


__all__ = ["DesignSolution", "EVALUATIONS", "ExactResult", "STRATEGIES", "SweepRow",
           "efficiency_sweep", "envelope_minimum", "fixed_weights", "frozen_boundary",
           "optimal_design", "read_sweep_csv", "rounded_weights", "strategy_fixed_weights",
           "strategy_frozen_boundary", "strategy_rounded_weights", "write_sweep_csv"]
