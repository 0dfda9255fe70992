"""Seeded Monte Carlo scoring of stopping policies, and an exhaustive oracle.

Trajectories are generated in fixed-size blocks.  Block ``b`` draws from a
Philox stream keyed by the master seed with counter offset ``b``, so the
result never depends on how blocks are spread over workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .dist import Distribution
from .game_alpha import GameSpec, SolverError
from .policy import StoppingPolicy

__all__ = [
    "BLOCK",
    "SimulationReport",
    "block_rng",
    "simulate_paths",
    "simulate",
    "simulate_paired",
    "brute_force_optimal",
]

BLOCK = 1 << 16
BRUTE_FORCE_LIMIT = 10**7


@dataclass(frozen=True)
class SimulationReport:
    game: str
    alpha: float | None
    estimate: float
    stderr: float
    samples: int
    seed: int
    wins: int

    def to_dict(self) -> dict:
        return asdict(self)


def block_rng(seed: int, block: int) -> np.random.Generator:
    if seed < 0:
        raise ValueError("seed must be nonnegative")
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, block, 0, 0]))


def _run_block(d: Distribution, policy: StoppingPolicy, seed: int, block: int, size: int):
    n = policy.n
    u = block_rng(seed, block).random((size, n))
    x = np.asarray(d.quantile(u), dtype=float).reshape(size, n)
    tau = np.full(size, n - 1)
    active = np.ones(size, dtype=bool)
    prev = np.full(size, -np.inf)
    for k in range(1, n + 1):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        xk = x[idx, k - 1]
        stop = policy.stops(k, xk, prev[idx])
        tau[idx[stop]] = k - 1
        active[idx[stop]] = False
        prev = np.maximum(prev, x[:, k - 1])
    return x, u, tau


def simulate_paths(d: Distribution, policy: StoppingPolicy, samples: int, seed: int):
    """Raw trajectories ``(x, u, tau)``; ``tau`` holds 0-based stopping indices."""
    parts = [_run_block(d, policy, seed, b, min(BLOCK, samples - b * BLOCK))
             for b in range(math.ceil(samples / BLOCK))]
    return tuple(np.concatenate(p) for p in zip(*parts))


def _score(d: Distribution, x, u, tau, alpha):
    rows = np.arange(x.shape[0])
    # cdf levels order continuous draws exactly even when far-out values
    # round to the same float; discrete ties must stay ties
    key = u if d.continuous else x
    win_max = key[rows, tau] >= key.max(axis=1)
    if alpha is None:
        return win_max, None
    win_alpha = x[rows, tau] >= alpha * x.max(axis=1)
    return win_max, win_alpha


def _block_counts(d, policy, alpha, seed, block, size):
    x, u, tau = _run_block(d, policy, seed, block, size)
    win_max, win_alpha = _score(d, x, u, tau, alpha)
    if win_alpha is None:
        return int(win_max.sum()), 0, 0
    return int(win_max.sum()), int(win_alpha.sum()), int(np.sum(win_max & ~win_alpha))


def _counts(d, policy, alpha, samples, seed, workers):
    if samples < 1:
        raise ValueError("samples must be >= 1")
    nblocks = math.ceil(samples / BLOCK)
    jobs = [(b, min(BLOCK, samples - b * BLOCK)) for b in range(nblocks)]
    if workers <= 1:
        results = [_block_counts(d, policy, alpha, seed, b, m) for b, m in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda job: _block_counts(d, policy, alpha, seed, *job), jobs))
    return tuple(sum(col) for col in zip(*results))


def _report(game, alpha, wins, samples, seed):
    p = wins / samples
    return SimulationReport(game, alpha, p, math.sqrt(p * (1 - p) / samples), samples, seed, wins)


def simulate(d: Distribution, policy: StoppingPolicy, game: str = "max", alpha: float | None = None,
             samples: int = 10**6, seed: int = 0, workers: int = 1) -> SimulationReport:
    """Estimate the win probability of ``policy`` in Game Max (``game="max"``)
    or the alpha game (``game="alpha"``)."""
    if game == "max":
        wins, _, _ = _counts(d, policy, None, samples, seed, workers)
        return _report("max", None, wins, samples, seed)
    if game == "alpha":
        if alpha is None or not 0 < alpha < 1:
            raise ValueError("the alpha game needs alpha in (0, 1)")
        _, wins, _ = _counts(d, policy, alpha, samples, seed, workers)
        return _report("alpha", alpha, wins, samples, seed)
    raise ValueError(f"unknown game {game!r}")


def simulate_paired(d: Distribution, policy: StoppingPolicy, alpha: float, samples: int = 10**6,
                    seed: int = 0, workers: int = 1):
    """Score both games on the same trajectories.

    Returns ``(max_report, alpha_report, violations)`` where ``violations``
    counts trajectories won in Game Max but lost in the alpha game.
    """
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    w_max, w_alpha, bad = _counts(d, policy, alpha, samples, seed, workers)
    return (_report("max", None, w_max, samples, seed),
            _report("alpha", alpha, w_alpha, samples, seed), bad)


def brute_force_optimal(d: Distribution, spec: GameSpec, limit: int = BRUTE_FORCE_LIMIT) -> float:
    """Optimal alpha-game value over all history-dependent rules, by enumeration.

    Works on the full tensor of s**n outcome sequences: the value of a
    length-k history is the larger of the conditional win probability of
    stopping now and the expected value of the extended history.
    """
    if d.atoms is None:
        raise SolverError("brute force needs a distribution with an atom list")
    values, probs = d.atoms
    s, n = values.size, spec.n
    if s ** n > limit:
        raise SolverError(f"{s}**{n} sequences exceed the enumeration limit {limit}")
    grids = np.meshgrid(*([values] * n), indexing="ij")
    overall_max = np.max(np.stack(grids), axis=0)

    def expect_last(t):
        return np.tensordot(t, probs, axes=([t.ndim - 1], [0]))

    value = (grids[n - 1] >= spec.alpha * overall_max).astype(float)
    for k in range(n - 1, 0, -1):
        stop = (grids[k - 1] >= spec.alpha * overall_max).astype(float)
        for _ in range(n - k):
            stop = expect_last(stop)
        value = np.maximum(stop, expect_last(value))
    return float(expect_last(value))
