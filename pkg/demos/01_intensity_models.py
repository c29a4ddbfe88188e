"""
Intensity functions and their shape conditions
===============================================

The information a design point carries depends on the linear predictor
only through the intensity lam(z).  This script looks at the built-in
intensities, the mode and threshold of the complementary log-log model,
and the grid check of the shape conditions.
"""

import numpy as np

from balldesign import builtin_model, check_conditions, custom_model, q_ratio

# Evaluate the four built-in intensities on a few predictor values.
z = np.array([-2.0, -0.5, 0.0, 0.5, 2.0])
for name in ("logit", "probit", "comploglog", "poisson"):
    model = builtin_model(name)
    print(f"{name:>10s}  {model.kind:9s}", np.round(model(z), 5))

# Logit and probit peak at zero.  The complementary log-log intensity is
# skewed: its peak (mode) and the point where (1/lam)''' vanishes
# (threshold) are different numbers.
cll = builtin_model("comploglog")
print(f"\ncomploglog mode      = {cll.mode:.6f}")
print(f"comploglog threshold = {cll.threshold:.6f}")

# For the problem reduced to the first axis, q(x) = lam(beta0 + beta1 x).
# Its log-derivative drives all the stationarity equations.
for x in (-1.0, 0.0, 1.0):
    print(f"q'/q at x={x:+.1f} (logit, beta0=0, beta1=1): {q_ratio(builtin_model('logit'), 0.0, 1.0, x):+.6f}")

# The shape conditions are checked numerically on a grid.
report = check_conditions(cll, interval=(-2.0, 2.0), grid=101)
print("\ncondition check for comploglog:", report.as_dict())

# A user-defined intensity only needs a callable; derivatives default to
# finite differences and the mode is located numerically.
bump = custom_model("bump", lambda t: np.exp(-np.asarray(t) ** 2 / 2), kind="unimodal")
print("custom model kind:", bump.kind, " value at 0:", float(bump(0.0)))
