"""
From orbits to finite point sets
================================

An orbit is a whole sphere of points sharing one value of the first
coordinate.  Any point set on that sphere with zero mean and isotropic
second moments carries the same information, so regular simplices and
cross-polytopes can stand in for it.  This script builds such designs and
certifies them with the equivalence theorem.
"""

import numpy as np

from balldesign import (CanonicalProblem, builtin_model, discretize_full_orbits,
                        discretize_pole_orbit, info_matrix, marginal_info_matrix,
                        optimal_marginal, regular_simplex, sensitivity_check,
                        two_orbit_info_matrix, two_orbit_min_support)

np.set_printoptions(precision=4, suppress=True)
logit = builtin_model("logit")

# A regular simplex: unit columns with pairwise inner product -1/m.
S = regular_simplex(3)
print("Gram matrix of the 3-simplex:\n", S.T @ S)

# Symmetric case, beta0 = 0: two orbits at about +-0.52.  Each becomes a
# triangle, giving six equally weighted points.
prob = CanonicalProblem.simple(3, 0.0, 1.0)
marg = optimal_marginal(logit, prob)
six = discretize_full_orbits(marg, 3)
print("\nsix-point design:\n", six.points)

# The discretized design has exactly the information matrix of the
# generalized one, and the sensitivity function never exceeds k+1 = 4.
gap = np.max(np.abs(info_matrix(six, logit, prob.beta) - marginal_info_matrix(marg, logit, prob)))
rep = sensitivity_check(six, logit, prob.beta)
print(f"matrix gap {gap:.1e}; max sensitivity {rep.max_value:.8f} on {rep.n_points} points;"
      f" pass={rep.passed}")

# With weights 1/2 each the same design can use only k+1 = 4 points:
# two on each orbit, spanning orthogonal coordinates.
four = two_orbit_min_support(marg.x11, marg.x12, 2, 3)
print("\nfour-point design:\n", four.points)
print("sensitivity pass:", sensitivity_check(four, logit, prob.beta).passed)

# That shortcut needs the orbit masses to be m/(k+1).  Then the split
# design and the orbit design have the same information matrix.
alpha = 0.5 - 2 / 4
M_split = two_orbit_info_matrix(marg.x11, marg.x12, alpha, 2, logit, prob)
print("split equals orbit matrix:",
      np.allclose(M_split, marginal_info_matrix(marg, logit, prob), atol=1e-12))

# Outside the two-orbit region the optimum is a pole plus a simplex on one
# orbit, which is always exactly k+1 points.
prob_far = CanonicalProblem.simple(3, -0.8, 1.0)
pole = discretize_pole_orbit(optimal_marginal(logit, prob_far), 3)
print("\npole design:\n", pole.points)
print("sensitivity max:", round(sensitivity_check(pole, logit, prob_far.beta).max_value, 8))

# Moving an orbit away from its optimum breaks the certificate.
shifted = marg.__class__(marg.points + [0.1, 0.0], marg.weights, marg.case)
bad = sensitivity_check(discretize_full_orbits(shifted, 3), logit, prob.beta)
print(f"shifted orbit: max {bad.max_value:.4f} at {bad.argmax}, pass={bad.passed}")
