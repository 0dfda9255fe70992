"""How close the alpha game gets to Game Max on the spread-out family.

On a spread-out law an alpha-game win that is not a Game Max win needs the
top slab to be shared by two or more draws, so the gap between the two games
is at most the probability that n uniform slab labels have no unique
maximum.  ``k_delta`` picks the slab count pushing that below delta.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .dist import make_spread, max_epsilon
from .game_alpha import GameSpec, solve_continuous
from .game_max import gm_value
from .sim import simulate_paired

__all__ = ["unique_max_probability", "riemann_sum", "k_delta", "GapReport", "gap_demo"]


def _check(n: int, k: int):
    if n < 1 or k < 1:
        raise ValueError(f"need n >= 1 and k >= 1, got n={n}, k={k}")


def unique_max_probability(n: int, k: int, exact: bool = False):
    """P(n i.i.d. uniform labels on {1..k} have a strictly unique maximum).

    Sum over the position i and value j of the maximum:
    ``n * sum_j (1/k) * ((j-1)/k)**(n-1)``.
    """
    _check(n, k)
    # 0**0 == 1 keeps the j = 1 term for a single draw
    p = Fraction(n * sum((j - 1) ** (n - 1) for j in range(1, k + 1)), k**n)
    return p if exact else float(p)


def riemann_sum(n: int, k: int, exact: bool = False):
    """Left Riemann sum ``sum_{j=1}^{k-1} (1/k)(j/k)**(n-1)`` of t**(n-1) on [0, 1]."""
    _check(n, k)
    if exact:
        return Fraction(sum(j ** (n - 1) for j in range(1, k)), k**n)
    return float(np.sum((np.arange(1, k) / k) ** (n - 1)) / k)


def k_delta(n: int, delta: float) -> int:
    """Smallest k with ``riemann_sum(n, k) > (1 - delta)/n``.

    ``delta`` is read as the decimal it prints as, so ``0.1`` means 1/10.
    """
    if n < 1:
        raise ValueError(f"horizon must be >= 1, got {n}")
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    target = 1 - Fraction(repr(float(delta)))
    num, k = 0, 1  # num = sum_{j<k} j**(n-1)
    while not n * num > target * k**n:
        num += k ** (n - 1)
        k += 1
    return k


@dataclass(frozen=True)
class GapReport:
    n: int
    alpha: float
    delta: float
    k_used: int
    eps_used: float
    v_alpha_est: float
    v_alpha_stderr: float
    v_max_est: float
    v_max_stderr: float
    gap_est: float
    combined_stderr: float
    dominance_violations: int
    dp_value: float
    gm_value: float
    samples: int
    seed: int

    def to_dict(self) -> dict:
        return asdict(self)


def gap_demo(n: int, alpha: float, delta: float, samples: int = 10**6, seed: int = 0,
             grid: int = 4096, workers: int = 1) -> GapReport:
    """Play both games with the alpha-optimal rule on X^{k_delta, eps}.

    Builds the spread-out law with ``k = k_delta(n, delta)`` and
    ``eps = 0.9 * max_epsilon(alpha)``, solves the alpha game on it, and
    estimates both win probabilities of that one rule on shared draws.
    """
    k = k_delta(n, delta)
    eps = 0.9 * max_epsilon(alpha)
    d = make_spread(alpha, k, eps)
    sol = solve_continuous(d, GameSpec(n, alpha), grid)
    rep_max, rep_alpha, bad = simulate_paired(d, sol.policy(), alpha, samples, seed, workers)
    return GapReport(
        n=n, alpha=alpha, delta=delta, k_used=k, eps_used=eps,
        v_alpha_est=rep_alpha.estimate, v_alpha_stderr=rep_alpha.stderr,
        v_max_est=rep_max.estimate, v_max_stderr=rep_max.stderr,
        gap_est=rep_alpha.estimate - rep_max.estimate,
        combined_stderr=math.hypot(rep_alpha.stderr, rep_max.stderr),
        dominance_violations=bad, dp_value=sol.optimal_value, gm_value=gm_value(n, 8192),
        samples=samples, seed=seed,
    )
