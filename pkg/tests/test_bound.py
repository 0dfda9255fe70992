from fractions import Fraction

import numpy as np
import pytest

from stopmax import make_spread
from stopmax.bound import gap_demo, k_delta, riemann_sum, unique_max_probability
from stopmax.game_alpha import GameSpec, solve_continuous
from stopmax.sim import simulate_paths

from oracles import unique_max_enumeration


def test_unique_max_examples():
    assert unique_max_probability(2, 2) == 0.5
    assert unique_max_probability(1, 5) == 1.0
    assert unique_max_probability(2, 10) == pytest.approx(0.9, abs=1e-15)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
def test_unique_max_matches_enumeration(n, k):
    assert unique_max_probability(n, k, exact=True) == unique_max_enumeration(n, k)


def test_unique_max_is_n_times_riemann_sum():
    for n in range(2, 7):
        for k in range(1, 40):
            assert unique_max_probability(n, k, exact=True) == n * riemann_sum(n, k, exact=True)


def test_riemann_sum_examples():
    assert riemann_sum(1, 4) == pytest.approx(0.75, abs=1e-15)
    assert riemann_sum(2, 10) == pytest.approx(0.45, abs=1e-15)
    assert riemann_sum(2, 10, exact=True) == Fraction(45, 100)
    assert riemann_sum(5, 1) == 0.0


def test_riemann_sum_below_and_increasing_to_limit():
    for n in range(1, 8):
        vals = [riemann_sum(n, k, exact=True) for k in range(1, 200)]
        assert all(v < Fraction(1, n) for v in vals)
        assert all(a < b for a, b in zip(vals, vals[1:]))


def test_k_delta_examples():
    assert k_delta(1, 0.5) == 3
    assert k_delta(2, 0.1) == 11
    # k = 2 gives exactly 1/4 and the definition is strict
    assert riemann_sum(2, 2, exact=True) == Fraction(1, 4)
    assert k_delta(2, 0.5) == 3


def test_k_delta_is_minimal():
    for n in (1, 2, 3, 5, 8):
        for delta in (0.3, 0.1, 0.05, 0.01):
            k = k_delta(n, delta)
            target = (1 - Fraction(repr(delta))) / n
            assert riemann_sum(n, k, exact=True) > target
            assert k == 1 or riemann_sum(n, k - 1, exact=True) <= target


def test_k_delta_monotone():
    deltas = [0.5, 0.3, 0.2, 0.1, 0.05, 0.02, 0.01]
    for n in range(1, 8):
        ks = [k_delta(n, d) for d in deltas]
        assert ks == sorted(ks)
    for d in deltas:
        ks = [k_delta(n, d) for n in range(1, 10)]
        assert ks == sorted(ks)


def test_k_delta_rejects():
    with pytest.raises(ValueError):
        k_delta(2, 0)
    with pytest.raises(ValueError):
        k_delta(0, 0.1)


def test_gap_demo_single_observation():
    rep = gap_demo(1, 0.7, 0.2, samples=5000, seed=1)
    assert rep.gap_est == 0.0
    assert rep.v_alpha_est == rep.v_max_est == 1.0


def test_gap_demo_report_fields():
    rep = gap_demo(2, 0.5, 0.5, samples=20_000, seed=4)
    assert rep.k_used == k_delta(2, 0.5)
    assert rep.eps_used == pytest.approx(0.9 * 8 / 3)
    assert rep.gap_est == rep.v_alpha_est - rep.v_max_est
    assert rep.dominance_violations == 0
    assert rep.gap_est <= 0.5 + 3 * rep.combined_stderr


def test_alpha_win_without_max_win_needs_tied_top_slab():
    d = make_spread(0.5, 4)
    sol = solve_continuous(d, GameSpec(3, 0.5))
    x, u, tau = simulate_paths(d, sol.policy(), 200_000, seed=8)
    rows = np.arange(x.shape[0])
    win_alpha = x[rows, tau] >= 0.5 * x.max(axis=1)
    win_max = u[rows, tau] >= u.max(axis=1)
    odd = win_alpha & ~win_max
    assert odd.sum() > 0
    labels = d.slab_index(x)
    top = labels.max(axis=1)
    ties = (labels == top[:, None]).sum(axis=1) >= 2
    assert np.all(ties[odd])
    assert np.all(labels[rows, tau][odd] == top[odd])
    # so their frequency respects the no-unique-maximum bound
    p_tie = 1 - unique_max_probability(3, 4)
    assert odd.mean() <= p_tie + 3 * np.sqrt(p_tie * (1 - p_tie) / x.shape[0])
