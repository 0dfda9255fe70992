"""Game Max: stop on the overall maximum of n i.i.d. continuous observations.

Through the probability-integral transform the problem does not depend on
the law, so all computations run on uniform(0, 1) cdf values.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import bisect

from .dist import Distribution
from .policy import StoppingPolicy

__all__ = [
    "ConvergenceError",
    "DecisionNumbers",
    "decision_number",
    "decision_numbers",
    "GMPolicy",
    "gm_policy",
    "gm_value",
    "gm_continue_tables",
]

MAX_BISECT_ITER = 200


class ConvergenceError(ArithmeticError):
    """A root finder or solver did not reach the requested tolerance."""


def _indifference(b: float, m: int) -> float:
    j = np.arange(1, m + 1)
    return float(np.sum((b ** (-j) - 1.0) / j)) - 1.0


@lru_cache(maxsize=None)
def decision_number(m: int, tol: float = 1e-12) -> float:
    """Cdf threshold for stopping on a running maximum with ``m`` draws left.

    Solves ``sum_{j=1..m} (b**-j - 1)/j = 1`` on (0, 1) by bisection.
    """
    if m < 0:
        raise ValueError(f"remaining count must be >= 0, got {m}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if m == 0:
        return 0.0
    # left end: the sum blows up as b -> 0; right end: it is 0 - 1 < 0 at b = 1
    lo = 1e-300 ** (1.0 / m) if m > 1 else 1e-12
    try:
        root, info = bisect(_indifference, lo, 1.0, args=(m,), xtol=tol, rtol=4 * np.finfo(float).eps,
                            maxiter=MAX_BISECT_ITER, full_output=True, disp=False)
    except (ValueError, RuntimeError) as exc:
        raise ConvergenceError(f"decision number for m={m}: {exc}") from exc
    if not info.converged:
        raise ConvergenceError(f"decision number for m={m} did not converge within {MAX_BISECT_ITER} steps")
    return float(root)


@dataclass(frozen=True)
class DecisionNumbers:
    """Thresholds ``b[m]`` indexed by the number of observations still to come."""

    n: int
    b: tuple[float, ...]

    def at_step(self, i: int) -> float:
        """Threshold d_i applied at observation i (1-based)."""
        return self.b[self.n - i]


def decision_numbers(n: int, tol: float = 1e-12) -> DecisionNumbers:
    if n < 1:
        raise ValueError(f"horizon must be >= 1, got {n}")
    return DecisionNumbers(n, tuple(decision_number(m, tol) for m in range(n)))


class GMPolicy(StoppingPolicy):
    """Stop at the first running maximum whose cdf value reaches its decision number."""

    def __init__(self, dist: Distribution, n: int, numbers: DecisionNumbers | None = None):
        super().__init__(n)
        self.dist = dist
        self.numbers = numbers or decision_numbers(n)

    def decide(self, k, x, prev_max):
        x = np.asarray(x, dtype=float)
        is_max = x >= prev_max
        return is_max & (self.dist.cdf(x) >= self.numbers.at_step(k))


def gm_policy(dist: Distribution, n: int) -> GMPolicy:
    return GMPolicy(dist, n)


def _trapz_tail(h: float, y: np.ndarray) -> np.ndarray:
    """tail[i] = trapezoid integral of y from node i to the last node."""
    cells = 0.5 * h * (y[1:] + y[:-1])
    tail = np.zeros_like(y)
    tail[:-1] = np.cumsum(cells[::-1])[::-1]
    return tail


def gm_continue_tables(n: int, grid: int) -> tuple[np.ndarray, np.ndarray]:
    """Continuation values on a uniform grid of running-max cdf values.

    Returns ``(u, C)`` with ``C[k-1, i]`` the optimal win probability after
    ``k`` observations whose running max has cdf ``u[i]``, when at least one
    more observation is taken.  Row ``n-1`` is identically zero.
    """
    if n < 1 or grid < 2:
        raise ValueError("need n >= 1 and grid >= 2")
    u = np.linspace(0.0, 1.0, grid)
    h = 1.0 / (grid - 1)
    C = np.zeros((n, grid))
    for k in range(n - 1, 0, -1):
        nxt = C[k]  # step k+1
        stop_next = u ** (n - k - 1)
        C[k - 1] = u * nxt + _trapz_tail(h, np.maximum(stop_next, nxt))
    return u, C


def gm_value(n: int, grid: int = 4096) -> float:
    """Optimal Game Max win probability by backward induction with trapezoid quadrature."""
    if n < 1:
        raise ValueError(f"horizon must be >= 1, got {n}")
    if n == 1:
        return 1.0
    u, C = gm_continue_tables(n, grid)
    g = np.maximum(u ** (n - 1), C[0])
    return float(np.trapezoid(g, u))
