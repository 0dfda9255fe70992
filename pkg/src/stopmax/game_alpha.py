"""Game Proportion of the Max: win when the stopped value is at least alpha times
the overall maximum.

Backward induction over the running maximum.  After k observations with
running max m, stopping on an observation x wins with probability
``[x >= alpha*m] * F(x/alpha)**(n-k)`` and continuing is worth ``W_k(m)``;
the future depends on the past only through m.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dist import Distribution
from .game_max import gm_value
from .policy import StoppingPolicy

__all__ = [
    "GameSpec",
    "AlphaDPSolution",
    "AlphaPolicy",
    "SolverError",
    "stop_value",
    "continue_value",
    "solve_discrete",
    "solve_continuous",
    "solve",
    "uniform_n2_closed_form",
    "certainty_condition",
    "certainty_report",
    "theorem_gap",
]

# stop/continue comparisons treat values this close as a tie (ties stop)
TIE_TOL = 1e-12
MAX_DISCRETE_STATES = 10_000


class SolverError(ArithmeticError):
    """The instance cannot be handled by the requested solver."""


@dataclass(frozen=True)
class GameSpec:
    n: int
    alpha: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"horizon n must be a positive integer, got {self.n}")
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")


def stop_value(d: Distribution, spec: GameSpec, k: int, x, m):
    """Win probability from stopping at step k on x when the running max (x included) is m."""
    x = np.asarray(x, dtype=float)
    m = np.asarray(m, dtype=float)
    u = np.where(x >= spec.alpha * m, np.asarray(d.cdf(x / spec.alpha)) ** (spec.n - k), 0.0)
    return float(u) if u.ndim == 0 else u


@dataclass(frozen=True, eq=False)
class AlphaDPSolution:
    """Value tables of the alpha game.

    Row ``k-1`` of ``stop_value`` holds the stop value at step k of an
    observation equal to the running max ``state_grid[i]``; row ``k-1`` of
    ``continue_value`` holds ``W_k(state_grid[i])``.  ``levels`` are the cdf
    coordinates of the grid (the atoms' cumulative masses for exact
    solutions).
    """

    spec: GameSpec
    dist: Distribution
    state_grid: np.ndarray
    levels: np.ndarray
    stop_value: np.ndarray
    continue_value: np.ndarray
    optimal_value: float
    exact: bool
    threshold: float = field(default=float("nan"))

    def stop_at(self, k: int, x, m):
        return stop_value(self.dist, self.spec, k, x, m)

    def continue_at(self, k: int, m):
        if k >= self.spec.n:
            return np.zeros(np.shape(m)) if np.ndim(m) else 0.0
        res = np.interp(m, self.state_grid, self.continue_value[k - 1])
        return float(res) if np.ndim(m) == 0 else res

    def stop_region(self, k: int) -> np.ndarray:
        """Grid states where stopping on a new running max is optimal at step k."""
        return self.stop_value[k - 1] >= self.continue_value[k - 1] - TIE_TOL

    def policy(self) -> "AlphaPolicy":
        return AlphaPolicy(self)


class AlphaPolicy(StoppingPolicy):
    """Optimal alpha-game rule read off a DP solution; ties stop."""

    def __init__(self, solution: AlphaDPSolution):
        super().__init__(solution.spec.n)
        self.solution = solution

    def decide(self, k, x, prev_max):
        x = np.asarray(x, dtype=float)
        m = np.maximum(prev_max, x)
        u = self.solution.stop_at(k, x, m)
        w = self.solution.continue_at(k, m)
        return u >= w - TIE_TOL


def _freeze(*arrays):
    for a in arrays:
        a.setflags(write=False)


def _first_step_threshold(values, stop_mask) -> float:
    # smallest state from which every larger state stops
    cont = np.flatnonzero(~stop_mask)
    if cont.size == 0:
        return float(values[0])
    j = cont[-1]
    return float(values[j + 1]) if j + 1 < values.size else float("inf")


def solve_discrete(d: Distribution, spec: GameSpec, max_states: int = MAX_DISCRETE_STATES,
                   chunk: int = 512) -> AlphaDPSolution:
    """Exact backward induction when ``d`` has finitely many atoms."""
    if d.atoms is None:
        raise SolverError("solve_discrete needs a distribution with an atom list")
    values, probs = d.atoms
    s = values.size
    if s > max_states:
        raise SolverError(f"{s} atoms exceed the state cap of {max_states}")
    n, alpha = spec.n, spec.alpha
    phi = np.empty((n, s))
    for k in range(1, n + 1):
        phi[k - 1] = np.asarray(d.cdf(values / alpha)) ** (n - k)
    W = np.zeros((n, s))
    for k in range(n - 1, 0, -1):
        phi_next, w_next = phi[k], W[k]
        above = np.maximum(phi_next, w_next)
        for start in range(0, s, chunk):
            j = np.arange(start, min(start + chunk, s))
            m = values[j][:, None]
            below = np.maximum(np.where(values[None, :] >= alpha * m, phi_next[None, :], 0.0),
                               w_next[j][:, None])
            vals = np.where(np.arange(s)[None, :] <= j[:, None], below, above[None, :])
            W[k - 1, j] = vals @ probs
    first = np.maximum(phi[0], W[0])
    value = float(np.clip(first @ probs, 0.0, 1.0)) if n > 1 else 1.0
    sol_thr = _first_step_threshold(values, phi[0] >= W[0] - TIE_TOL)
    _freeze(phi, W)
    return AlphaDPSolution(spec, d, values, np.asarray(d.cdf(values)),
                           phi, W, value, exact=True, threshold=sol_thr)


def _continuous_nodes(d: Distribution, alpha: float, grid: int):
    """Cdf levels and state values for the continuous DP.

    Uniform levels plus each quantile jump (entered twice, once with the
    left and once with the right quantile limit) and the levels where the
    candidate boundary ``alpha*m`` crosses a jump or the support ends.
    """
    breaks = np.asarray(d.prob_breaks(), dtype=float)
    breaks = breaks[(breaks > 0) & (breaks < 1)]
    anchors = [np.array([d.support_min, d.support_max])]
    if breaks.size:
        anchors += [np.asarray(d.quantile(breaks)), np.asarray(d.quantile_right(breaks))]
    anchors = np.concatenate(anchors)
    extra = np.asarray(d.cdf(alpha * anchors))
    plain = np.unique(np.concatenate([np.linspace(0.0, 1.0, grid), extra]))
    plain = plain[(plain >= 0) & (plain <= 1)]
    plain = plain[~np.isin(plain, breaks)]
    lv = np.concatenate([plain, breaks, breaks])
    qv = np.concatenate([np.asarray(d.quantile(plain)), np.asarray(d.quantile(breaks)),
                         np.asarray(d.quantile_right(breaks))])
    order = np.lexsort((qv, lv))
    return lv[order], qv[order]


def _max_cells(x: np.ndarray, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Per-cell integrals of max(f, g) for the linear interpolants of f and g."""
    dx = np.diff(x)
    d0, d1 = (f - g)[:-1], (f - g)[1:]
    top = np.maximum(f, g)
    cells = 0.5 * dx * (top[:-1] + top[1:])
    cross = (d0 * d1) < 0
    if np.any(cross):
        # split the cell where the two lines meet
        t = d0[cross] / (d0[cross] - d1[cross])
        meet = f[:-1][cross] + t * (f[1:][cross] - f[:-1][cross])
        cells[cross] = 0.5 * dx[cross] * (t * (top[:-1][cross] + meet) + (1 - t) * (meet + top[1:][cross]))
    return cells


class _PiecewiseLinear:
    """Linear interpolant of nondecreasing node values with exact running integral."""

    def __init__(self, x: np.ndarray, y: np.ndarray):
        self.x, self.y = x, y
        dx = np.diff(x)
        self.cum = np.concatenate([[0.0], np.cumsum(0.5 * dx * (y[1:] + y[:-1]))])
        with np.errstate(divide="ignore", invalid="ignore"):
            self.slope = np.where(dx > 0, np.diff(y) / np.where(dx > 0, dx, 1.0), 0.0)

    def integral_to(self, t: np.ndarray) -> np.ndarray:
        i = np.clip(np.searchsorted(self.x, t, side="right") - 1, 0, self.x.size - 2)
        h = t - self.x[i]
        return self.cum[i] + h * (self.y[i] + 0.5 * self.slope[i] * h)

    def first_reach(self, level: np.ndarray) -> np.ndarray:
        """Smallest x where the interpolant reaches ``level`` (+inf if never)."""
        i = np.searchsorted(self.y, level, side="left")
        inner = np.clip(i, 1, self.x.size - 1)
        y0, y1 = self.y[inner - 1], self.y[inner]
        x0, x1 = self.x[inner - 1], self.x[inner]
        with np.errstate(divide="ignore", invalid="ignore"):
            frac = np.where(y1 > y0, (level - y0) / (y1 - y0), 1.0)
        c = x0 + np.clip(frac, 0.0, 1.0) * (x1 - x0)
        c = np.where(i == 0, self.x[0], c)
        return np.where(i >= self.x.size, np.inf, c)


def solve_continuous(d: Distribution, spec: GameSpec, grid: int = 4096) -> AlphaDPSolution:
    """Backward induction on a quantile-spaced grid of running-max states.

    Expectations over the next observation are integrals over its cdf level
    on [0, 1].  The candidate part below the running max is integrated
    exactly against the linear interpolant of the stop value, splitting at
    the level where stopping starts to beat continuing.
    """
    if not d.continuous:
        raise SolverError("solve_continuous needs a continuous distribution; use solve_discrete")
    if grid < 2:
        raise ValueError("grid must be >= 2")
    n, alpha = spec.n, spec.alpha
    lv, qv = _continuous_nodes(d, alpha, grid)
    reach = np.asarray(d.cdf(qv / alpha))
    phi = np.vstack([reach ** (n - k) for k in range(1, n + 1)])
    a = np.minimum(np.asarray(d.cdf(alpha * qv)), lv)
    W = np.zeros((n, lv.size))
    for k in range(n - 1, 0, -1):
        phi_next, w_next = phi[k], W[k]
        cells = _max_cells(lv, phi_next, w_next)
        tail = np.concatenate([np.cumsum(cells[::-1])[::-1], [0.0]])
        interp = _PiecewiseLinear(lv, phi_next)
        cross = np.clip(interp.first_reach(w_next), a, lv)
        below = w_next * (cross - a) + interp.integral_to(lv) - interp.integral_to(cross)
        W[k - 1] = np.clip(w_next * a + below + tail, 0.0, 1.0)
    if n == 1:
        value = 1.0
    else:
        value = float(np.clip(np.sum(_max_cells(lv, phi[0], W[0])), 0.0, 1.0))
    threshold = _continuous_threshold(d, lv, qv, phi[0] - W[0])
    _freeze(lv, qv, phi, W)
    return AlphaDPSolution(spec, d, qv, lv, phi, W, value, exact=False, threshold=threshold)


def _continuous_threshold(d, lv, qv, diff) -> float:
    cont = np.flatnonzero(diff < -TIE_TOL)
    if cont.size == 0:
        return float(qv[0])
    j = cont[-1]
    if j + 1 >= lv.size:
        return float("inf")
    if lv[j + 1] == lv[j]:
        return float(qv[j + 1])
    level = lv[j] + (-diff[j]) / (diff[j + 1] - diff[j]) * (lv[j + 1] - lv[j])
    return float(d.quantile(level))


def solve(d: Distribution, spec: GameSpec, grid: int = 4096) -> AlphaDPSolution:
    """Exact solver for finite atoms, grid solver otherwise."""
    if d.atoms is not None:
        return solve_discrete(d, spec)
    return solve_continuous(d, spec, grid)


def continue_value(d: Distribution, spec: GameSpec, k: int, m, grid: int = 4096):
    """W_k(m): optimal win probability when observing at least once more after step k."""
    if spec.n == 1 or k >= spec.n:
        return 0.0 if np.ndim(m) == 0 else np.zeros(np.shape(m))
    return solve(d, spec, grid).continue_at(k, m)


def uniform_n2_closed_form(alpha: float) -> tuple[float, float]:
    """(first-step threshold, optimal value) for uniform(0, 1) with two observations."""
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    a2 = alpha * alpha
    return alpha / (1 + a2), 1 - alpha ** 3 / (2 * (a2 + 1))


def certainty_report(d: Distribution, alpha: float) -> dict:
    """Which certainty condition holds, or the interval carrying mass against it."""
    lo, hi = d.support_min, d.support_max
    out = {"certain": False, "condition": None, "support_min": lo, "support_max": hi,
           "interval": None, "interval_mass": None}
    if not (lo > 0 and np.isfinite(hi)):
        out["reason"] = "support must lie in [m, M] with 0 < m <= M < inf"
        return out
    if alpha * alpha <= lo / hi:
        out.update(certain=True, condition="i")
        return out
    left, right = lo / alpha, alpha * hi
    mass = d.mass_open(left, right)
    out["interval"] = [left, right]
    out["interval_mass"] = mass
    if mass == 0.0:
        out.update(certain=True, condition="ii")
    return out


def certainty_condition(d: Distribution, alpha: float) -> bool:
    """True exactly when the alpha game can be won with probability one (n >= 2)."""
    return certainty_report(d, alpha)["certain"]


def theorem_gap(d: Distribution, spec: GameSpec, grid: int = 4096, gm_grid: int = 8192) -> float:
    """Optimal alpha-game value minus the Game Max value for the same horizon."""
    return solve(d, spec, grid).optimal_value - gm_value(spec.n, gm_grid)
