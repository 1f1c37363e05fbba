import numpy as np
import pytest

from zsopt.baselines import (
    DeConfig,
    PsoConfig,
    binomial_crossover,
    de_mutant,
    de_run,
    distinct_pairs,
    pso_run,
    pso_velocity,
    random_search_run,
)
from zsopt.core import Bounds, ConfigurationError, EvaluationBudget, Problem, make_rng

from conftest import CountingObjective, sphere, sphere_problem


def test_config_defaults_from_parameter_table():
    assert PsoConfig() == PsoConfig(1.0, 2.05, 2.05, 2.0, -2.0)
    assert (DeConfig().F, DeConfig().Cr) == (0.8, 0.9)


def test_config_validation():
    with pytest.raises(ConfigurationError):
        PsoConfig(v_max=-3.0)
    with pytest.raises(ConfigurationError):
        DeConfig(Cr=1.5)
    with pytest.raises(ConfigurationError):
        DeConfig(F=0.0)


def test_pso_stationary_swarm_stays_put():
    X = np.tile([1.5, -2.0], (5, 1))
    V = np.zeros_like(X)
    newV = pso_velocity(V, X, X.copy(), X[0].copy(), PsoConfig(), make_rng(0))
    np.testing.assert_array_equal(X + newV, X)


def test_pso_velocity_clipped(rng):
    X = rng.uniform(-100, 100, (50, 6))
    V = rng.uniform(-50, 50, (50, 6))
    newV = pso_velocity(V, X, -X, X[0], PsoConfig(), rng)
    assert newV.min() >= -2.0 and newV.max() <= 2.0


def test_de_crossover_saturation(rng):
    X = rng.normal(size=(6, 4))
    V = rng.normal(size=(6, 4))
    np.testing.assert_array_equal(binomial_crossover(X, V, 1.0, rng), V)


def test_de_zero_differential_identity():
    X = np.arange(12.0).reshape(4, 3)
    r1 = np.array([1, 2, 3, 0])
    out = de_mutant(X, X[0], r1, r1, 0.0)
    np.testing.assert_array_equal(out, X)


def test_de_trial_differs_when_mutant_differs(rng):
    for _ in range(100):
        X = rng.normal(size=(8, 5))
        V = X + rng.uniform(0.1, 1.0, size=X.shape)
        T = binomial_crossover(X, V, 0.0, rng)
        assert np.all(np.any(T != X, axis=1))


def test_distinct_pairs(rng):
    for n in (4, 5, 30):
        for _ in range(200):
            r1, r2 = distinct_pairs(n, rng)
            i = np.arange(n)
            assert np.all((r1 != i) & (r2 != i) & (r1 != r2))
            assert r1.max() < n and r2.max() < n and r2.min() >= 0


def test_de_needs_four():
    with pytest.raises(ConfigurationError):
        de_run(sphere_problem(3), DeConfig(), 3, 0, EvaluationBudget(100))


def test_random_search_single_eval():
    obj = CountingObjective(sphere)
    p = Problem("s", Bounds.uniform(-1, 1, 3), obj)
    res = random_search_run(p, 100, 5, EvaluationBudget(1))
    assert res.fe_used == 1 and obj.calls == 1
    x = np.random.default_rng(5).uniform(-1, 1, size=(1, 3))[0]
    assert res.best.fitness == pytest.approx(sphere(x))


def test_random_search_spends_whole_budget():
    res = random_search_run(sphere_problem(3), 100, 0, EvaluationBudget(1234))
    assert res.fe_used == 1234 and res.generations == 13


RUNNERS = {
    "pso": lambda p, seed, b: pso_run(p, PsoConfig(), 20, seed, b),
    "de": lambda p, seed, b: de_run(p, DeConfig(), 20, seed, b),
    "random": lambda p, seed, b: random_search_run(p, 20, seed, b),
}


@pytest.mark.parametrize("name", sorted(RUNNERS))
def test_shared_run_contracts(name):
    p = sphere_problem(5, low=-3, high=7)
    run = RUNNERS[name]
    budget = EvaluationBudget(1010)
    res = run(p, 9, budget)
    assert res.fe_used <= 1010 and res.fe_used == budget.used_fe
    assert p.bounds.contains(res.best.position)
    best = [b for _, b in res.trace]
    assert all(b2 <= b1 for b1, b2 in zip(best, best[1:]))
    assert best[-1] == res.best.fitness
    again = run(p, 9, EvaluationBudget(1010))
    assert again.best.fitness == res.best.fitness and again.trace == res.trace


@pytest.mark.parametrize("name", ["pso", "de"])
def test_generation_accounting(name):
    obj = CountingObjective(sphere)
    p = Problem("s", Bounds.uniform(-5, 5, 3), obj)
    res = RUNNERS[name](p, 0, EvaluationBudget(1010))
    assert res.generations == 49 and res.fe_used == 1000 == obj.calls


@pytest.mark.slow
def test_pso_improves_on_initial_best_every_trial():
    p = sphere_problem(10)
    for seed in range(30):
        res = pso_run(p, PsoConfig(), 100, seed, EvaluationBudget(10_000))
        assert res.best.fitness < res.trace[0][1]


@pytest.mark.slow
def test_de_median_beats_random_search_on_sphere():
    p = sphere_problem(10)
    de = [de_run(p, DeConfig(), 100, s, EvaluationBudget(10_000)).best.fitness for s in range(30)]
    rs = [random_search_run(p, 100, s, EvaluationBudget(10_000)).best.fitness for s in range(30)]
    assert np.median(de) < np.median(rs)
