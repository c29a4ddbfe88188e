"""Locally D-optimal designs for single-index intensity models on the k-ball.

The information of an observation at ``x`` is ``lam(f(x)^T beta) f(x) f(x)^T``
with ``f(x) = (1, x)``.  Problems are reduced to the canonical form
``beta0 + beta1 * x1`` on the unit ball, solved for the optimal marginal
design of ``x1`` and turned into finite designs.
"""

from .canonical import CanonicalProblem, Region, map_back, reduce
from .errors import (BallDesignError, BoundaryFailure, ConfigurationError,
                     ContractViolation, NumericDomainError, SolverFailure)
from .exact import (DesignSolution, SweepRow, efficiency_sweep, optimal_design,
                    strategy_fixed_weights, strategy_frozen_boundary,
                    strategy_rounded_weights, write_sweep_csv)
from .geometry import (BallDesign, discretize_full_orbits, discretize_pole_orbit,
                       regular_simplex, two_orbit_min_support)
from .information import (d_criterion, d_efficiency, info_matrix, marginal_info_matrix,
                          sensitivity_check, two_orbit_info_matrix)
from .intensity import (IntensityModel, builtin_model, check_conditions, custom_model,
                        q_ratio, tabulated_model)
from .marginal import (Case, MarginalDesign, SymmetricSolution, classify, grid_oracle,
                       optimal_marginal, region_boundaries, solve_fixed_alpha,
                       solve_general_c, solve_pole_plus_orbit, solve_symmetric)

__version__ = "0.1.0"

__all__ = [
    "BallDesign", "BallDesignError", "BoundaryFailure", "CanonicalProblem", "Case",
    "ConfigurationError", "ContractViolation", "DesignSolution", "IntensityModel",
    "MarginalDesign", "NumericDomainError", "Region", "SolverFailure", "SweepRow",
    "SymmetricSolution", "builtin_model", "check_conditions", "classify", "custom_model",
    "d_criterion", "d_efficiency", "discretize_full_orbits", "discretize_pole_orbit",
    "efficiency_sweep", "grid_oracle", "info_matrix", "map_back", "marginal_info_matrix",
    "optimal_design", "optimal_marginal", "q_ratio", "reduce", "region_boundaries",
    "regular_simplex", "sensitivity_check", "solve_fixed_alpha", "solve_general_c",
    "solve_pole_plus_orbit", "solve_symmetric", "strategy_fixed_weights",
    "strategy_frozen_boundary", "strategy_rounded_weights", "tabulated_model",
    "two_orbit_info_matrix", "two_orbit_min_support", "write_sweep_csv",
]
