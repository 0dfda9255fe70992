"""
Proportion of the max on ten equally likely values
==================================================

Two draws from {1, ..., 10}.  After the first draw x we either stop and win
when the second draw is at most x/alpha, or move on and win when the second
draw is at least alpha*x.  Stopping is better exactly when
floor(x/alpha) + ceil(alpha*x) >= 11.
"""

import numpy as np

from stopmax import DiscreteUniform
from stopmax.game_alpha import GameSpec, solve_discrete

d = DiscreteUniform(1, 10)

# %%
# Threshold and value for each alpha; the DP works on exact atom tables.
print("alpha  threshold  value")
for alpha in np.arange(1, 10) / 10:
    sol = solve_discrete(d, GameSpec(2, alpha))
    print(f"{alpha:5.1f}  {sol.threshold:9.0f}  {sol.optimal_value:.2f}")

# %%
# The floor/ceil rule by hand at alpha = 0.8: x = 5 scores 6 + 4 = 10, so we continue.
alpha = 0.8
for x in range(1, 11):
    score = np.floor(x / alpha) + np.ceil(alpha * x)
    print(x, int(score), "stop" if score >= 11 else "continue")

# %%
# Longer horizons need the full DP over the running max.
for n in (3, 5, 8):
    print(n, solve_discrete(d, GameSpec(n, 0.7)).optimal_value)
