"""
Two uniform draws: numeric DP against the closed form
=====================================================

For uniform(0,1) and n = 2 the first-step threshold is alpha/(1+alpha^2) and
the optimal value is 1 - alpha^3 / (2(alpha^2+1)).  The continuous solver
works on cdf levels and should reproduce both.
"""

import numpy as np

from stopmax import Uniform
from stopmax.game_alpha import GameSpec, solve_continuous, uniform_n2_closed_form

d = Uniform(0, 1)

# %%
print("alpha   dp_value  closed    dp_thr  closed")
for alpha in np.linspace(0.05, 0.95, 19):
    sol = solve_continuous(d, GameSpec(2, alpha), grid=4096)
    thr, val = uniform_n2_closed_form(alpha)
    print(f"{alpha:.2f}   {sol.optimal_value:.6f}  {val:.6f}  {sol.threshold:.4f}  {thr:.4f}")

# %%
# Grid refinement.  For two uniform draws every integrand is piecewise linear in
# the level, so even a coarse grid is exact to rounding.  Three draws are not.
_, exact = uniform_n2_closed_form(0.6)
for grid in (16, 64, 256, 1024, 4096):
    print(grid, abs(solve_continuous(d, GameSpec(2, 0.6), grid).optimal_value - exact))

for grid in (16, 64, 256, 1024, 4096):
    print(grid, solve_continuous(d, GameSpec(3, 0.6), grid).optimal_value)
