"""Intensity functions for generalized linear models.

An intensity function ``lam`` turns the linear predictor ``z = f(x)^T beta``
into the weight of the elemental information matrix
``lam(z) f(x) f(x)^T``.  Besides the value we carry the first derivative, the
logarithmic derivative ``lam'/lam`` (numerically stable forms for the
built-in models) and the class metadata the design solvers branch on.

Built-in models: ``logit``, ``probit``, ``comploglog`` and ``poisson``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.optimize import brentq
from scipy.special import ndtr

from .errors import ConfigurationError, NumericDomainError

MONOTONE = "monotone"
UNIMODAL = "unimodal"

FD_STEP = 1e-6
_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class IntensityModel:
    """An intensity function with derivatives and class metadata.

    ``kind`` is either ``"monotone"`` (lam' > 0 everywhere) or
    ``"unimodal"`` (single peak at ``mode``).  ``threshold`` is the branch
    point at which ``(1/lam)''`` switches between its two injective
    branches.  A symmetric model has ``mode == threshold`` and
    ``lam(mode + z) == lam(mode - z)``.
    """

    name: str
    value: Callable
    deriv1: Callable
    kind: str
    mode: Optional[float] = None
    threshold: Optional[float] = None
    symmetric: bool = False
    log_deriv: Optional[Callable] = None
    deriv2: Optional[Callable] = None
    zmax: float = math.inf

    def __post_init__(self):
        if self.kind not in (MONOTONE, UNIMODAL):
            raise ConfigurationError(f"unknown intensity class {self.kind!r}")
        if self.symmetric and (self.mode is None or self.threshold is None
                               or self.mode != self.threshold):
            raise ConfigurationError(
                "a symmetric intensity needs mode == threshold")

    @property
    def center(self) -> float:
        """Symmetry centre ``c_lambda`` (only defined for symmetric models)."""
        if not self.symmetric:
            raise ConfigurationError(f"model {self.name!r} is not symmetric")
        return self.mode

    def _domain(self, z):
        z = np.asarray(z, dtype=float)
        if np.any(np.abs(z) > self.zmax):
            raise NumericDomainError(
                f"{self.name}: |z| > {self.zmax} is outside the supported domain")
        return z

    def __call__(self, z):
        z = self._domain(z)
        out = self.value(z)
        if not np.all(np.isfinite(out)):
            raise NumericDomainError(f"{self.name}: non-finite intensity at z={z}")
        return out

    def d1(self, z):
        z = self._domain(z)
        return self.deriv1(z)

    def d2(self, z):
        z = self._domain(z)
        if self.deriv2 is not None:
            return self.deriv2(z)
        h = 1e-4
        return (self.deriv1(z + h) - self.deriv1(z - h)) / (2 * h)

    def ratio(self, z):
        """Logarithmic derivative ``lam'(z) / lam(z)``."""
        z = self._domain(z)
        if self.log_deriv is not None:
            out = self.log_deriv(z)
        else:
            out = self.deriv1(z) / self.value(z)
        if not np.all(np.isfinite(out)):
            raise NumericDomainError(f"{self.name}: non-finite lam'/lam at z={z}")
        return out


def _fd_derivative(f, h=FD_STEP):
    def df(z):
        return (f(z + h) - f(z - h)) / (2.0 * h)
    return df


# -- logit --------------------------------------------------------------

def _logit_value(z):
    e = np.exp(-np.abs(z))
    return e / (1.0 + e) ** 2


def _logit_ratio(z):
    return -np.tanh(0.5 * np.asarray(z, dtype=float))


def _logit_d1(z):
    return _logit_value(z) * _logit_ratio(z)


def _logit_d2(z):
    lam = _logit_value(z)
    t = _logit_ratio(z)
    return lam * t * t - 2.0 * lam * lam


# -- probit -------------------------------------------------------------

def _phi(z):
    return np.exp(-0.5 * z * z) / _SQRT_2PI


def _probit_value(z):
    z = np.asarray(z, dtype=float)
    p = _phi(z)
    return p * p / (ndtr(z) * ndtr(-z))


def _probit_ratio(z):
    z = np.asarray(z, dtype=float)
    p = _phi(z)
    return -2.0 * z - p / ndtr(z) + p / ndtr(-z)


def _probit_d1(z):
    return _probit_value(z) * _probit_ratio(z)


def _probit_d2(z):
    z = np.asarray(z, dtype=float)
    p = _phi(z)
    a = p / ndtr(z)
    b = p / ndtr(-z)
    lp = -2.0 * z - a + b
    lpp = -2.0 + a * (z + a) + b * (b - z)
    return _probit_value(z) * (lp * lp + lpp)


# -- complementary log-log ------------------------------------------------

def _cll_value(z):
    z = np.asarray(z, dtype=float)
    return np.exp(2.0 * z) / np.expm1(np.exp(z))


def _cll_h(t):
    # t / (1 - exp(-t)), the derivative of log(expm1(e^z)) w.r.t. z
    return t / -np.expm1(-t)


def _cll_ratio(z):
    z = np.asarray(z, dtype=float)
    return 2.0 - _cll_h(np.exp(z))


def _cll_d1(z):
    return _cll_value(z) * _cll_ratio(z)


def _cll_d2(z):
    z = np.asarray(z, dtype=float)
    t = np.exp(z)
    em = -np.expm1(-t)
    dh_dt = (em - t * np.exp(-t)) / (em * em)
    lp = 2.0 - t / em
    lpp = -t * dh_dt
    return _cll_value(z) * (lp * lp + lpp)


def _cll_u3(z):
    # third derivative of u = 1/lam = exp(e^z - 2z) - exp(-2z)
    t = math.exp(z)
    g1 = t - 2.0
    return (t + 3.0 * g1 * t + g1 ** 3) * math.exp(t - 2.0 * z) + 8.0 * math.exp(-2.0 * z)


def _cll_constants():
    mode = brentq(lambda z: float(_cll_ratio(z)), -1.0, 2.0, xtol=1e-15)
    threshold = brentq(_cll_u3, -1.0, 1.0, xtol=1e-15)
    return mode, threshold


# -- poisson ------------------------------------------------------------

def _exp(z):
    return np.exp(np.asarray(z, dtype=float))


def _one(z):
    return np.ones_like(np.asarray(z, dtype=float))


def _build_builtins():
    cll_mode, cll_threshold = _cll_constants()
    return {
        "logit": IntensityModel(
            "logit", _logit_value, _logit_d1, UNIMODAL, mode=0.0, threshold=0.0,
            symmetric=True, log_deriv=_logit_ratio, deriv2=_logit_d2),
        "probit": IntensityModel(
            "probit", _probit_value, _probit_d1, UNIMODAL, mode=0.0, threshold=0.0,
            symmetric=True, log_deriv=_probit_ratio, deriv2=_probit_d2, zmax=8.0),
        "comploglog": IntensityModel(
            "comploglog", _cll_value, _cll_d1, UNIMODAL, mode=cll_mode,
            threshold=cll_threshold, log_deriv=_cll_ratio, deriv2=_cll_d2),
        "poisson": IntensityModel(
            "poisson", _exp, _exp, MONOTONE, log_deriv=_one, deriv2=_exp),
    }


_BUILTINS = _build_builtins()
BUILTIN_NAMES = tuple(_BUILTINS)


def builtin_model(name: str) -> IntensityModel:
    """Return one of the built-in intensity models by name."""
    try:
        return _BUILTINS[name]
    except KeyError:
        raise ConfigurationError(
            f"unknown model {name!r}; choose from {', '.join(BUILTIN_NAMES)}") from None


def custom_model(name, value, kind=MONOTONE, deriv1=None, mode=None,
                 threshold=None, symmetric=False, deriv2=None) -> IntensityModel:
    """Wrap a user supplied intensity.

    Without ``deriv1`` the derivative is a central difference with step 1e-6.
    """
    if deriv1 is None:
        deriv1 = _fd_derivative(value)
    return IntensityModel(name, value, deriv1, kind, mode=mode, threshold=threshold,
                          symmetric=symmetric, deriv2=deriv2)


def tabulated_model(z, values, name="tabulated", kind=None) -> IntensityModel:
    """Intensity from tabulated ``(z, lam(z))`` pairs.

    Values are interpolated with a monotone cubic (PCHIP) and extrapolated
    by the boundary polynomials, so keep designs inside the tabulated range.
    When ``kind`` is omitted it is inferred from the sign pattern of the
    tabulated slope; a unimodal table gets its mode from the interpolant.
    The threshold of ``(1/lam)''`` is left unset.
    """
    z = np.asarray(z, dtype=float)
    values = np.asarray(values, dtype=float)
    if z.ndim != 1 or z.shape != values.shape or z.size < 3:
        raise ConfigurationError("tabulated model needs matching 1-d arrays of >= 3 rows")
    if np.any(np.diff(z) <= 0):
        raise ConfigurationError("tabulated z values must be strictly increasing")
    if np.any(values <= 0):
        raise ConfigurationError("tabulated intensity must be positive")
    interp = PchipInterpolator(z, values, extrapolate=True)
    d_interp = interp.derivative()
    d2_interp = interp.derivative(2)
    slope = np.diff(values)
    mode = None
    if kind is None:
        if np.all(slope > 0):
            kind = MONOTONE
        else:
            kind = UNIMODAL
    if kind == UNIMODAL:
        i = int(np.argmax(values))
        lo, hi = z[max(i - 1, 0)], z[min(i + 1, z.size - 1)]
        f_lo, f_hi = float(d_interp(lo)), float(d_interp(hi))
        mode = brentq(lambda t: float(d_interp(t)), lo, hi) if f_lo * f_hi < 0 else float(z[i])
    return IntensityModel(name, lambda t: interp(t), lambda t: d_interp(t), kind,
                          mode=mode, deriv2=lambda t: d2_interp(t))


def load_tabulated(path, name=None, kind=None) -> IntensityModel:
    """Read a two-column whitespace or comma separated ``z lam`` file."""
    try:
        data = np.loadtxt(path, delimiter=None, comments="#", ndmin=2)
    except ValueError:
        data = np.loadtxt(path, delimiter=",", comments="#", ndmin=2)
    if data.shape[1] != 2:
        raise ConfigurationError(f"{path}: expected two columns, got {data.shape[1]}")
    return tabulated_model(data[:, 0], data[:, 1], name=name or str(path), kind=kind)


def q_value(model: IntensityModel, beta0, beta1, x1):
    """``q(x1) = lam(beta0 + beta1 * x1)``."""
    return model(beta0 + beta1 * np.asarray(x1, dtype=float))


def q_ratio(model: IntensityModel, beta0, beta1, x1):
    """``q'(x1) / q(x1) = beta1 * lam'/lam (beta0 + beta1 * x1)``."""
    if beta1 < 0:
        raise ConfigurationError("beta1 must be non-negative")
    return beta1 * model.ratio(beta0 + beta1 * np.asarray(x1, dtype=float))


@dataclass(frozen=True)
class ConditionReport:
    """Grid certificate for the regularity conditions on an interval.

    ``a2`` and ``a3`` refer to the monotone-class conditions for monotone
    models and to their unimodal counterparts otherwise.  Sampled checks
    only; nothing here is a proof.
    """

    kind: str
    interval: tuple
    grid: int
    a1: bool
    a2: bool
    a3: bool
    a4: bool
    a5: bool

    def as_dict(self):
        return {"kind": self.kind, "interval": list(self.interval), "grid": self.grid,
                "A1": self.a1, "A2": self.a2, "A3": self.a3, "A4": self.a4, "A5": self.a5}


def _strictly_monotone(v):
    d = np.diff(v)
    return bool(np.all(d > 0) or np.all(d < 0))


def check_conditions(model: IntensityModel, interval=(-2.0, 2.0), grid=101,
                     large=(4.0, 6.0)) -> ConditionReport:
    """Check the intensity conditions on a sampled grid.

    A5 (``1/lam`` dominating ``z**2``) is probed by requiring ``|u(z)/z^2|``
    to increase on a grid over ``large``.
    """
    lo, hi = map(float, interval)
    if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
        raise ConfigurationError(f"bad interval {interval!r}")
    if grid < 3:
        raise ConfigurationError("grid must have at least 3 points")
    z = np.linspace(lo, hi, grid)
    try:
        lam = np.asarray(model(z), dtype=float)
        d1 = np.asarray(model.d1(z), dtype=float)
        d2 = np.asarray(model.d2(z), dtype=float)
        ratio = np.asarray(model.ratio(z), dtype=float)
    except (FloatingPointError, OverflowError) as exc:
        raise NumericDomainError(str(exc)) from exc

    a1 = bool(np.all(np.isfinite(lam)) and np.all(lam > 0))
    u2 = (2.0 * d1 * d1 - lam * d2) / lam ** 3

    if model.kind == MONOTONE:
        a2 = bool(np.all(d1 > 0))
        a3 = _strictly_monotone(u2)
    else:
        if model.mode is None:
            a2 = False
        else:
            tol = 1e-8
            left = z < model.mode - tol
            right = z > model.mode + tol
            a2 = bool(np.all(d1[left] > 0) and np.all(d1[right] < 0))
        if model.threshold is None:
            a3 = False
        else:
            left = z <= model.threshold
            right = z >= model.threshold
            a3 = all(_strictly_monotone(u2[mask]) for mask in (left, right)
                     if mask.sum() >= 2)

    scale = np.maximum(1.0, np.abs(ratio[:-1]))
    a4 = bool(np.all(np.diff(ratio) <= 1e-9 * scale))

    zl = np.linspace(large[0], min(large[1], model.zmax), grid)
    with np.errstate(over="ignore", divide="ignore"):
        growth = np.abs(1.0 / np.asarray(model.value(zl), dtype=float)) / zl ** 2
    a5 = bool(np.all(np.isfinite(growth)) and np.all(np.diff(growth) > 0))

    return ConditionReport(model.kind, (lo, hi), int(grid), a1, a2, a3, a4, a5)
