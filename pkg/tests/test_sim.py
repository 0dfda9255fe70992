import numpy as np
import pytest

from stopmax import Categorical, DiscreteUniform, FunctionPolicy, Uniform, gm_policy, make_spread
from stopmax.game_alpha import GameSpec, SolverError, solve_continuous, solve_discrete
from stopmax.sim import (BLOCK, SimulationReport, brute_force_optimal, simulate, simulate_paired,
                         simulate_paths)

D10 = DiscreteUniform(1, 10)


def always_stop(n):
    return FunctionPolicy(n, lambda k, x, m: np.ones_like(x, dtype=bool))


@pytest.mark.parametrize("d", [Uniform(0, 1), D10, make_spread(0.5, 3)], ids=repr)
def test_single_observation_always_wins(d):
    for game, alpha in (("max", None), ("alpha", 0.4)):
        rep = simulate(d, always_stop(1), game, alpha, samples=1000, seed=0)
        assert rep.estimate == 1.0 and rep.stderr == 0.0
    r_max, r_alpha, bad = simulate_paired(d, always_stop(1), 0.4, samples=1000)
    assert r_max.estimate == r_alpha.estimate == 1.0 and bad == 0


def test_gm_policy_uniform_table_value():
    d = Uniform(0, 1)
    rep = simulate(d, gm_policy(d, 3), "max", samples=10**6, seed=0)
    assert abs(rep.estimate - 0.684293) <= 3 * rep.stderr


def test_alpha_policy_example1():
    pol = solve_discrete(D10, GameSpec(2, 0.5)).policy()
    rep = simulate(D10, pol, "alpha", 0.5, samples=10**6, seed=0)
    assert abs(rep.estimate - 0.98) <= 3 * rep.stderr


def test_report_stderr_formula():
    rep = simulate(Uniform(0, 1), gm_policy(Uniform(0, 1), 2), "max", samples=12345, seed=3)
    assert isinstance(rep, SimulationReport)
    assert rep.stderr == pytest.approx(np.sqrt(rep.estimate * (1 - rep.estimate) / rep.samples))
    assert rep.wins == round(rep.estimate * rep.samples)


def test_paired_scores_same_paths():
    d = make_spread(0.5, 2, 1.0)
    pol = solve_continuous(d, GameSpec(2, 0.5)).policy()
    r_max, r_alpha, bad = simulate_paired(d, pol, 0.5, samples=10**6, seed=1)
    assert bad == 0
    se = np.hypot(r_max.stderr, r_alpha.stderr)
    assert r_alpha.estimate - r_max.estimate <= 0.5 + 3 * se
    assert simulate(d, pol, "max", samples=10**6, seed=1) == r_max
    assert simulate(d, pol, "alpha", 0.5, samples=10**6, seed=1) == r_alpha


@pytest.mark.parametrize("d", [Uniform(0, 1), D10, make_spread(0.8, 6)], ids=repr)
def test_determinism_across_workers(d):
    pol = gm_policy(d, 4)
    samples = 3 * BLOCK + 17
    base = simulate_paired(d, pol, 0.8, samples=samples, seed=42)
    for workers in (1, 2, 3, 8):
        assert simulate_paired(d, pol, 0.8, samples=samples, seed=42, workers=workers) == base
    assert simulate_paired(d, pol, 0.8, samples=samples, seed=43) != base


def test_paths_respect_forced_stop():
    x, u, tau = simulate_paths(Uniform(0, 1), gm_policy(Uniform(0, 1), 5), 5000, seed=2)
    assert x.shape == (5000, 5) and tau.min() >= 0 and tau.max() <= 4
    assert np.allclose(x, u)


def test_no_policy_beats_optimal():
    # common random numbers: every rule sees the same draws
    rng = np.random.default_rng(123)
    for t in rng.uniform(0, 11, size=100):
        pol = FunctionPolicy(2, lambda k, x, m, t=t: x >= t)
        rep = simulate(D10, pol, "alpha", 0.5, samples=100_000, seed=77)
        assert rep.estimate <= 0.98 + 3 * rep.stderr


def test_invalid_arguments():
    pol = gm_policy(D10, 2)
    with pytest.raises(ValueError):
        simulate(D10, pol, "alpha", None)
    with pytest.raises(ValueError):
        simulate(D10, pol, "best")
    with pytest.raises(ValueError):
        simulate(D10, pol, samples=0)
    with pytest.raises(ValueError):
        simulate(D10, pol, seed=-1)


def test_brute_force_examples():
    assert brute_force_optimal(DiscreteUniform(1, 2), GameSpec(2, 0.6)) == pytest.approx(1.0, abs=1e-15)
    assert brute_force_optimal(D10, GameSpec(2, 0.5)) == pytest.approx(0.98, abs=1e-12)
    single = Categorical([3.7], [1.0])
    for n in (1, 2, 4):
        assert brute_force_optimal(single, GameSpec(n, 0.9)) == 1.0


def test_brute_force_limits():
    with pytest.raises(SolverError):
        brute_force_optimal(D10, GameSpec(8, 0.5))
    with pytest.raises(SolverError):
        brute_force_optimal(Uniform(0, 1), GameSpec(2, 0.5))


@pytest.mark.parametrize("s", range(1, 7))
@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.8])
def test_oracle_equivalence(s, n, alpha):
    d = DiscreteUniform(1, s)
    spec = GameSpec(n, alpha)
    assert abs(brute_force_optimal(d, spec) - solve_discrete(d, spec).optimal_value) <= 1e-12
