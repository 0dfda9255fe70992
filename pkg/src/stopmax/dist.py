"""Distributions over the nonnegative reals used by the stopping games.

Every family exposes the same small capability set: ``cdf``, ``cdf_left``,
``quantile``, ``sample``, support bounds and (for finite families) the atom
list.  All methods accept scalars or numpy arrays.
"""

from __future__ import annotations

import math
import re

import numpy as np

__all__ = [
    "Distribution",
    "Uniform",
    "Categorical",
    "DiscreteUniform",
    "SpreadOut",
    "DistSpecError",
    "parse_dist_spec",
    "n_alpha",
    "max_epsilon",
    "make_spread",
    "slab_index",
]

_PROB_TOL = 1e-9


class DistSpecError(ValueError):
    """Raised for malformed or invalid distribution specifications."""


def _out(values, like):
    return float(values) if np.ndim(like) == 0 else values


class Distribution:
    """Base class for a law on ``[support_min, support_max]``.

    Subclasses implement ``cdf`` and ``quantile``; everything else has a
    generic default.
    """

    support_min: float
    support_max: float
    continuous: bool = True
    atoms: tuple[np.ndarray, np.ndarray] | None = None

    def cdf(self, x):
        raise NotImplementedError

    def cdf_left(self, x):
        """P(X < x)."""
        return self.cdf(x)

    def quantile(self, p):
        raise NotImplementedError

    def quantile_right(self, p):
        """inf{x : cdf(x) > p}, the right limit of the quantile function."""
        return self.quantile(p)

    def prob_breaks(self) -> np.ndarray:
        """Probabilities in (0, 1) where the quantile function jumps."""
        return np.empty(0)

    def sample(self, rng: np.random.Generator, size=None):
        return self.quantile(rng.random(size))

    def mass_open(self, lo: float, hi: float) -> float:
        """P(lo < X < hi)."""
        if hi <= lo:
            return 0.0
        return max(0.0, float(self.cdf_left(hi)) - float(self.cdf(lo)))


class Uniform(Distribution):
    def __init__(self, a: float, b: float):
        if not (0 <= a < b) or not math.isfinite(b):
            raise DistSpecError(f"uniform needs 0 <= a < b < inf, got a={a}, b={b}")
        self.a = float(a)
        self.b = float(b)
        self.support_min = self.a
        self.support_max = self.b

    def cdf(self, x):
        x_arr = np.asarray(x, dtype=float)
        return _out(np.clip((x_arr - self.a) / (self.b - self.a), 0.0, 1.0), x)

    def quantile(self, p):
        p_arr = np.clip(np.asarray(p, dtype=float), 0.0, 1.0)
        return _out(self.a + p_arr * (self.b - self.a), p)

    def __repr__(self):
        return f"Uniform({self.a:g}, {self.b:g})"


class Categorical(Distribution):
    """Finite-support law given by distinct values and positive masses."""

    continuous = False

    def __init__(self, values, probs):
        values = np.asarray(values, dtype=float)
        probs = np.asarray(probs, dtype=float)
        if values.ndim != 1 or values.shape != probs.shape or values.size == 0:
            raise DistSpecError("values and probs must be nonempty 1-D arrays of equal length")
        if np.any(values < 0) or not np.all(np.isfinite(values)):
            raise DistSpecError("support values must be finite and nonnegative")
        if np.any(probs <= 0):
            raise DistSpecError("atom probabilities must be positive")
        total = math.fsum(probs)
        if abs(total - 1.0) > _PROB_TOL:
            raise DistSpecError(f"probabilities sum to {total:.12g}, not 1")
        order = np.argsort(values, kind="stable")
        values, probs = values[order], probs[order]
        if np.any(np.diff(values) == 0):
            raise DistSpecError("duplicate support values")
        self.values = values
        self.probs = probs
        self.cum = self._cumulative()
        self.support_min = float(values[0])
        self.support_max = float(values[-1])
        self.atoms = (self.values, self.probs)
        for arr in (self.values, self.probs, self.cum):
            arr.setflags(write=False)

    def _cumulative(self) -> np.ndarray:
        cum = np.cumsum(self.probs)
        cum[-1] = 1.0
        return cum

    def cdf(self, x):
        idx = np.searchsorted(self.values, np.asarray(x, dtype=float), side="right")
        res = np.where(idx > 0, self.cum[np.maximum(idx - 1, 0)], 0.0)
        return _out(res, x)

    def cdf_left(self, x):
        idx = np.searchsorted(self.values, np.asarray(x, dtype=float), side="left")
        res = np.where(idx > 0, self.cum[np.maximum(idx - 1, 0)], 0.0)
        return _out(res, x)

    def quantile(self, p):
        p_arr = np.clip(np.asarray(p, dtype=float), 0.0, 1.0)
        idx = np.searchsorted(self.cum, p_arr, side="left")
        return _out(self.values[np.minimum(idx, self.values.size - 1)], p)

    def quantile_right(self, p):
        p_arr = np.clip(np.asarray(p, dtype=float), 0.0, 1.0)
        idx = np.searchsorted(self.cum, p_arr, side="right")
        return _out(self.values[np.minimum(idx, self.values.size - 1)], p)

    def prob_breaks(self) -> np.ndarray:
        return np.asarray(self.cum[:-1])

    def __repr__(self):
        return f"Categorical({len(self.values)} atoms on [{self.support_min:g}, {self.support_max:g}])"


class DiscreteUniform(Categorical):
    """Equal mass on the integers ``lo..hi``."""

    def __init__(self, lo: int, hi: int):
        if lo > hi:
            raise DistSpecError(f"empty range {lo}..{hi}")
        if lo < 0:
            raise DistSpecError("support values must be nonnegative")
        self.lo, self.hi = int(lo), int(hi)
        s = hi - lo + 1
        super().__init__(np.arange(lo, hi + 1), np.full(s, 1.0 / s))

    def _cumulative(self) -> np.ndarray:
        # i/s is correctly rounded, unlike a running sum of 1/s
        s = self.values.size
        return np.arange(1, s + 1) / s

    def __repr__(self):
        return f"DiscreteUniform({self.lo}..{self.hi})"


def n_alpha(alpha: float) -> int:
    """Smallest integer N with alpha > 1/N."""
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    n = math.floor(1.0 / alpha) + 1
    # floor(1/alpha) may be off by one when 1/alpha rounds across an integer
    while n > 1 and alpha > 1.0 / (n - 1):
        n -= 1
    while not alpha > 1.0 / n:
        n += 1
    return n


def max_epsilon(alpha: float) -> float:
    """Strict upper bound on the half-width of the spread-out slabs.

    With base ``N + 1`` (``N = n_alpha(alpha)``), any ``eps`` below
    ``(N+1)(alpha*N + alpha - 1)/(alpha + 1)`` keeps every point of slab j
    strictly below ``alpha`` times every point of slab j+1.
    """
    n = n_alpha(alpha)
    return (n + 1) * (alpha * n + alpha - 1) / (alpha + 1)


class SpreadOut(Distribution):
    """Uniform mass 1/k on each slab ``[base**j - eps, base**j + eps]``, j = 1..k."""

    def __init__(self, alpha: float, k: int, eps: float | None = None):
        bound = max_epsilon(alpha)
        if eps is None:
            eps = 0.9 * bound
        if int(k) != k or k < 1:
            raise DistSpecError(f"k must be a positive integer, got {k}")
        if not 0 < eps < bound:
            raise DistSpecError(f"eps must lie in (0, {bound:.6g}) for alpha={alpha}, got {eps}")
        self.alpha = float(alpha)
        self.k = int(k)
        self.eps = float(eps)
        self.base = n_alpha(alpha) + 1
        self.centers = np.array([float(self.base) ** j for j in range(1, self.k + 1)])
        self.lows = self.centers - self.eps
        self.highs = self.centers + self.eps
        for arr in (self.centers, self.lows, self.highs):
            arr.setflags(write=False)
        self.support_min = float(self.lows[0])
        self.support_max = float(self.highs[-1])

    def cdf(self, x):
        x_arr = np.asarray(x, dtype=float)
        j = np.searchsorted(self.lows, x_arr, side="right")
        jj = np.maximum(j - 1, 0)
        frac = np.clip((x_arr - self.lows[jj]) / (2 * self.eps), 0.0, 1.0)
        res = np.where(j > 0, (jj + frac) / self.k, 0.0)
        return _out(res, x)

    def _scaled(self, p):
        scaled = np.clip(np.asarray(p, dtype=float), 0.0, 1.0) * self.k
        # p = j/k rarely multiplies back to exactly j
        r = np.rint(scaled)
        return np.where(np.abs(scaled - r) <= 1e-12 * self.k, r, scaled)

    def quantile(self, p):
        scaled = self._scaled(p)
        j = np.clip(np.ceil(scaled).astype(int), 1, self.k)
        t = scaled - (j - 1)
        return _out(self.lows[j - 1] + 2 * self.eps * t, p)

    def quantile_right(self, p):
        scaled = self._scaled(p)
        j = np.clip(np.floor(scaled).astype(int) + 1, 1, self.k)
        t = np.clip(scaled - (j - 1), 0.0, 1.0)
        return _out(self.lows[j - 1] + 2 * self.eps * t, p)

    def prob_breaks(self) -> np.ndarray:
        return np.arange(1, self.k) / self.k

    def slab_index(self, x):
        """1-based slab containing ``x``; 0 where ``x`` lies in no slab."""
        x_arr = np.asarray(x, dtype=float)
        j = np.searchsorted(self.lows, x_arr, side="right")
        inside = (j > 0) & (x_arr <= self.highs[np.maximum(j - 1, 0)])
        res = np.where(inside, j, 0)
        return int(res) if np.ndim(x) == 0 else res

    def __repr__(self):
        return f"SpreadOut(alpha={self.alpha:g}, k={self.k}, eps={self.eps:g})"


def make_spread(alpha: float, k: int, eps: float | None = None) -> SpreadOut:
    return SpreadOut(alpha, k, eps)


def slab_index(d: SpreadOut, x) -> int | None:
    """Slab number of ``x`` in 1..k, or None when ``x`` falls in a gap."""
    j = d.slab_index(x)
    return j if j > 0 else None


_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"


def _num(text: str, what: str) -> float:
    if not re.fullmatch(_NUM, text):
        raise DistSpecError(f"bad number for {what}: {text!r}")
    return float(text)


def parse_dist_spec(spec: str) -> Distribution:
    """Build a distribution from its compact text form.

    >>> parse_dist_spec("duniform:1..10").cdf(8)
    0.8
    """
    kind, sep, body = spec.strip().partition(":")
    if not sep or not body:
        raise DistSpecError(f"expected KIND:PARAMS, got {spec!r}")
    if kind == "uniform":
        parts = body.split(",")
        if len(parts) != 2:
            raise DistSpecError("uniform takes A,B")
        return Uniform(_num(parts[0], "A"), _num(parts[1], "B"))
    if kind == "duniform":
        m = re.fullmatch(r"([+-]?\d+)\.\.([+-]?\d+)", body)
        if not m:
            raise DistSpecError("duniform takes LO..HI with integer bounds")
        return DiscreteUniform(int(m.group(1)), int(m.group(2)))
    if kind == "cat":
        values, probs = [], []
        for item in body.split(","):
            v, eq, p = item.partition("=")
            if not eq:
                raise DistSpecError(f"cat entry {item!r} is not VALUE=PROB")
            values.append(_num(v, "value"))
            probs.append(_num(p, "probability"))
        return Categorical(values, probs)
    if kind == "spread":
        fields = {}
        for item in body.split(","):
            key, eq, val = item.partition("=")
            if not eq or key not in ("alpha", "k", "eps") or key in fields:
                raise DistSpecError(f"bad spread field {item!r}")
            fields[key] = val
        if "alpha" not in fields or "k" not in fields:
            raise DistSpecError("spread needs alpha=A,k=K")
        alpha = _num(fields["alpha"], "alpha")
        if not 0 < alpha < 1:
            raise DistSpecError(f"alpha must lie in (0, 1), got {alpha}")
        if not re.fullmatch(r"\d+", fields["k"]):
            raise DistSpecError(f"k must be a positive integer, got {fields['k']!r}")
        eps = _num(fields["eps"], "eps") if "eps" in fields else None
        return SpreadOut(alpha, int(fields["k"]), eps)
    raise DistSpecError(f"unknown distribution kind {kind!r}")
