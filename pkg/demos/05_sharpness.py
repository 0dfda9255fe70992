"""
Spread-out laws squeeze the proportion game down to Game Max
============================================================

Put mass 1/k on each of k narrow slabs spaced geometrically so that no two
slabs are within a factor alpha of each other.  Winning the proportion game
then means stopping in the top slab, which is Game Max on the slab labels
unless the top slab is shared.  As k grows the shared case vanishes.
"""

from stopmax.bound import gap_demo, k_delta, riemann_sum, unique_max_probability

# %%
# Probability that k equally likely labels have a unique maximum among n draws.
for k in (2, 5, 10, 50, 200):
    print(k, unique_max_probability(3, k), 3 * riemann_sum(3, k))

# %%
# Slab counts needed for a target gap delta.
for delta in (0.2, 0.1, 0.05, 0.02):
    print(delta, [k_delta(n, delta) for n in (2, 3, 5)])

# %%
# The same alpha-optimal rule, scored in both games on shared draws.
for delta in (0.2, 0.05, 0.02):
    rep = gap_demo(2, 0.5, delta, samples=400_000, seed=3)
    print(f"delta={delta:<5} k={rep.k_used:3d} gap={rep.gap_est:.4f} +- {rep.combined_stderr:.4f} "
          f"violations={rep.dominance_violations}")
