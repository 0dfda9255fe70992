"""
When can the proportion game be won for sure?
=============================================

With support inside [m, M], a sure win is possible exactly when alpha^2 <= m/M,
or when no mass falls strictly between m/alpha and alpha*M.
"""

from stopmax import Categorical, DiscreteUniform, Uniform
from stopmax.game_alpha import GameSpec, certainty_report, solve

# %%
for d, alpha in ((DiscreteUniform(1, 10), 0.3), (DiscreteUniform(1, 10), 0.4),
                 (Uniform(1, 2), 0.5), (Uniform(0, 1), 0.5),
                 (Categorical([1, 1.5, 9, 10], [0.25] * 4), 0.6)):
    rep = certainty_report(d, alpha)
    value = solve(d, GameSpec(4, alpha), 1024).optimal_value
    print(f"{d!r:50s} alpha={alpha}  certain={rep['certain']!s:5s} "
          f"condition={rep['condition']}  value(n=4)={value:.6f}")
