"""
Game Max: decision numbers and win probabilities
================================================

Stopping on a running maximum whose cdf level clears a decision number is
optimal for picking the overall best of n continuous draws.  The win
probability does not depend on the law of the draws.
"""

# %%
# Decision numbers b[m], indexed by the number of draws still to come.
from stopmax.game_max import decision_numbers, gm_value

dn = decision_numbers(10)
for m, b in enumerate(dn.b):
    print(f"m={m:2d}  b={b:.6f}")

# %%
# Optimal win probabilities, which fall toward 0.580164 as n grows.
for n in (1, 2, 3, 4, 5, 10, 20, 50):
    print(f"n={n:2d}  v={gm_value(n, 8192):.6f}")

# %%
# Distribution-freeness: the same rule on three very different laws.  With a
# shared seed the draws share their cdf levels, so the three estimates coincide.
from stopmax import Uniform, make_spread
from stopmax.game_max import gm_policy
from stopmax.sim import simulate

for d in (Uniform(0, 1), Uniform(3, 8), make_spread(0.5, 10)):
    rep = simulate(d, gm_policy(d, 5), "max", samples=200_000, seed=1)
    print(f"{d!r:45s} {rep.estimate:.4f} +- {rep.stderr:.4f}")
