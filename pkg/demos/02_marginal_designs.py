"""
Where the two orbits sit
========================

For the logit model in k=3 dimensions with slope 1 the optimal design is
concentrated on two orbits of the first coordinate.  As the intercept
moves, one orbit runs into a pole and the design switches to a pole plus
a single orbit.  This script traces that path and cross-checks a few
points against a brute-force grid search.
"""

import numpy as np

from balldesign import (CanonicalProblem, builtin_model, grid_oracle, optimal_marginal,
                        region_boundaries)
from balldesign.marginal import marginal_det

logit = builtin_model("logit")
k, beta1 = 3, 1.0

# The interval of -beta0 on which both orbits are interior.
lo, hi = region_boundaries(logit, k, beta1)
print(f"two-orbit region for -beta0: ({lo:.4f}, {hi:.4f})\n")

# Walk -beta0 from -1.2 to 1.2 and print the orbit positions and weights.
print("  -beta0  case      x11       x12       w1")
for b in np.linspace(-1.2, 1.2, 13):
    d = optimal_marginal(logit, CanonicalProblem.simple(k, -b, beta1))
    print(f"{b:+8.2f}  {d.case.value:5s} {d.x11:+9.5f} {d.x12:+9.5f} {d.w1:8.5f}")

# At beta0 = 0 the two orbits are mirror images at about +-0.52 with equal
# weights.  At beta0 = 0.1 the orbit positions shift and the weights split.
for b0 in (0.0, 0.1):
    d = optimal_marginal(logit, CanonicalProblem.simple(k, b0, beta1))
    print(f"\nbeta0={b0}: x11={d.x11:.6f} x12={d.x12:.6f} w1={d.w1:.6f} w2={d.weights[1]:.6f}"
          f" residual={d.residual:.1e}")

# A brute-force search over a 401 x 101 grid of positions and weights can
# only do as well as the grid allows; the solver's determinant is never
# below it.
for b0 in (-0.3, 0.0, 0.3):
    prob = CanonicalProblem.simple(k, b0, beta1)
    d = optimal_marginal(logit, prob)
    orc = grid_oracle(logit, prob)
    print(f"beta0={b0:+.1f}: solver det {marginal_det(logit, prob, d):.10f}"
          f"  grid det {orc.extra['det']:.10f}  grid x11 {orc.x11:+.3f}")

# Skewed intensities behave differently: for the complementary log-log
# model the two-orbit region is not centred at zero.
cll = builtin_model("comploglog")
print("\ncomploglog region (k=3):", tuple(round(v, 4) for v in region_boundaries(cll, 3, 1.0)))
