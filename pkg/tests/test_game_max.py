import math

import numpy as np
import pytest

from stopmax import DiscreteUniform, Uniform, make_spread
from stopmax.game_max import (ConvergenceError, decision_number, decision_numbers, gm_continue_tables,
                              gm_policy, gm_value)
from stopmax.sim import simulate

from oracles import gm_indifference_grid

TABLE1 = {1: 1.0, 2: .75, 3: .684293, 4: .655396, 5: .639194, 10: .608699, 15: .598980,
          20: .594200, 30: .589472, 40: .587126, 50: .585725}


def test_decision_number_small():
    assert decision_number(0) == 0.0
    assert decision_number(1) == pytest.approx(0.5, abs=1e-10)
    # the m = 2 equation reduces to 5b^2 - 2b - 1 = 0
    assert decision_number(2) == pytest.approx((1 + math.sqrt(6)) / 5, abs=1e-10)


@pytest.mark.parametrize("m", [1, 2, 3, 5, 8])
def test_decision_number_matches_grid_dp(m):
    assert decision_number(m) == pytest.approx(gm_indifference_grid(m), abs=2e-5)


def test_decision_number_rejects_bad_input():
    with pytest.raises(ValueError):
        decision_number(-1)
    with pytest.raises(ValueError):
        decision_number(2, tol=0)


def test_decision_number_iteration_cap(monkeypatch):
    monkeypatch.setattr("stopmax.game_max.MAX_BISECT_ITER", 3)
    decision_number.cache_clear()
    try:
        with pytest.raises(ConvergenceError):
            decision_number(4, 1e-14)
    finally:
        decision_number.cache_clear()


def test_decision_numbers_shape():
    dn = decision_numbers(12)
    b = np.array(dn.b)
    assert b[0] == 0.0
    assert np.all(np.diff(b[1:]) > 0)
    assert np.all((b >= 0) & (b < 1))
    assert dn.at_step(12) == 0.0 and dn.at_step(11) == pytest.approx(0.5)


def test_decision_numbers_are_dp_indifference_points():
    n, grid = 6, 20001
    u, C = gm_continue_tables(n, grid)
    for k in range(1, n):
        stop = u ** (n - k) >= C[k - 1]
        first = u[np.argmax(stop)]
        assert np.all(stop[u >= first])
        assert first == pytest.approx(decision_number(n - k), abs=2 / grid)


@pytest.mark.parametrize("n", [1, 2, 10])
def test_gm_value_table(n):
    assert gm_value(n, 8192) == pytest.approx(TABLE1[n], abs=5e-4)


def test_gm_value_monotone_and_limit():
    vals = [gm_value(n, 4096) for n in range(1, 61)]
    assert all(a >= b for a, b in zip(vals, vals[1:]))
    assert vals[-1] > 0.580164


def test_gm_value_grid_self_consistency():
    for n in (3, 10, 30):
        assert abs(gm_value(n, 8192) - gm_value(n, 4096)) < 5e-4


def test_gm_policy_decisions():
    d = Uniform(0, 1)
    p1 = gm_policy(d, 1)
    assert p1.stops(1, np.array([0.01]), np.array([-np.inf])).all()
    p2 = gm_policy(d, 2)
    assert p2.stops(1, 0.6, -np.inf)
    assert not p2.stops(1, 0.4, -np.inf)
    assert p2.stops(1, 0.5, -np.inf)  # indifference stops
    p3 = gm_policy(d, 3)
    # not a running max, never stop before the end
    assert not p3.stops(2, 0.95, 0.97)
    assert p3.stops(3, 0.1, 0.97)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_distribution_free_value(n):
    v = gm_value(n, 8192)
    for d in (Uniform(0, 1), Uniform(3, 8), make_spread(0.5, 10)):
        rep = simulate(d, gm_policy(d, n), "max", samples=10**6, seed=11)
        assert abs(rep.estimate - v) <= 3 * rep.stderr, (d, rep)
    d = DiscreteUniform(1, 1000)
    rep = simulate(d, gm_policy(d, n), "max", samples=10**6, seed=11)
    assert rep.estimate >= v - 3 * rep.stderr
