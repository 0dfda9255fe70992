from __future__ import annotations

from typing import Callable

import numpy as np

__all__ = ["StoppingPolicy", "FunctionPolicy"]


class StoppingPolicy:
    """A stopping rule over a horizon of ``n`` observations.

    ``decide(k, x, prev_max)`` receives the 1-based step, the current
    observation and the running maximum of the earlier observations
    (``-inf`` at step 1), all possibly as arrays, and returns a boolean stop
    mask.  ``stops`` wraps it and forces a stop at step ``n``.
    """

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"horizon must be >= 1, got {n}")
        self.n = int(n)

    def decide(self, k: int, x, prev_max):
        raise NotImplementedError

    def stops(self, k: int, x, prev_max):
        if k >= self.n:
            return np.ones(np.shape(x), dtype=bool)
        return np.asarray(self.decide(k, x, prev_max), dtype=bool)


class FunctionPolicy(StoppingPolicy):
    def __init__(self, n: int, fn: Callable):
        super().__init__(n)
        self.fn = fn

    def decide(self, k, x, prev_max):
        return np.broadcast_to(self.fn(k, np.asarray(x, dtype=float), prev_max), np.shape(x))
