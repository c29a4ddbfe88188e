"""
Arbitrary parameters and ellipsoidal regions
============================================

Any slope vector can be rotated onto the first axis, and any ellipsoid
{a + B u : |u| <= 1} is an affine image of the unit ball.  The solver
works in the reduced coordinates and maps the design back.  This script
solves a problem in the original coordinates and checks the result there.
"""

import numpy as np

from balldesign import (Region, builtin_model, d_criterion, info_matrix, optimal_design, reduce,
                        sensitivity_check)
from balldesign.canonical import to_canonical_points

np.set_printoptions(precision=4, suppress=True)
cll = builtin_model("comploglog")

# Parameter vector and an ellipsoidal design region in three dimensions.
beta = np.array([0.3, 0.8, -0.5, 0.2])
region = Region(center=[0.5, 0.0, -0.2],
                matrix=[[1.0, 0.2, 0.0], [0.0, 0.6, 0.1], [0.0, 0.0, 0.8]])

# The reduced problem only needs an intercept and a slope.
prob = reduce(beta, region)
print(f"reduced problem: beta0={prob.beta0:.6f} beta1={prob.beta1:.6f}")

sol = optimal_design(cll, beta, region)
print("case:", sol.marginal.case.value)
print("design points in the original coordinates:\n", sol.design.points)
print("weights:", sol.design.weights)

# Every point lies in the ellipsoid: pulled back, it lands in the unit ball.
u = to_canonical_points(sol.design.points, prob)
print("norms in the reduced ball:", np.linalg.norm(u, axis=1))

# The equivalence check is invariant under the affine map, so it can be
# done in the reduced coordinates.
rep = sensitivity_check(sol.canonical, cll, prob.beta)
print(f"sensitivity max {rep.max_value:.8f} (bound {rep.bound}), pass={rep.passed}")

# A seed picks a random orientation of the simplices; the information
# matrix does not change.
a = optimal_design(cll, beta, region).design
b = optimal_design(cll, beta, region, seed=1).design
print("det with default and seeded orientation:",
      d_criterion(info_matrix(a, cll, beta)), d_criterion(info_matrix(b, cll, beta)))
