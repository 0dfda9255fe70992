"""Optimal stopping for the maximum and for a proportion of the maximum of i.i.d. draws."""

from .dist import (Categorical, DiscreteUniform, Distribution, DistSpecError, SpreadOut, Uniform,
                   make_spread, max_epsilon, n_alpha, parse_dist_spec, slab_index)
from .game_alpha import (AlphaDPSolution, AlphaPolicy, GameSpec, SolverError, certainty_condition,
                         certainty_report, continue_value, solve, solve_continuous, solve_discrete,
                         stop_value, theorem_gap, uniform_n2_closed_form)
from .game_max import (ConvergenceError, DecisionNumbers, GMPolicy, decision_number, decision_numbers,
                       gm_policy, gm_value)
from .policy import FunctionPolicy, StoppingPolicy

__version__ = "0.1.0"
