"""Reference optimizers: global-best PSO, DE/current-to-best/1/bin, random search."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    ConfigurationError,
    EvaluationBudget,
    Problem,
    RunResult,
    clamp_to_bounds,
    evaluate_batch,
    individual_at,
    init_population,
    make_rng,
)
from .zso import _accept


@dataclass(frozen=True)
class PsoConfig:
    w: float = 1.0
    c1: float = 2.05
    c2: float = 2.05
    v_max: float = 2.0
    v_min: float = -2.0

    def __post_init__(self):
        if not self.v_min < self.v_max:
            raise ConfigurationError("PSO needs v_min < v_max")


@dataclass(frozen=True)
class DeConfig:
    F: float = 0.8
    Cr: float = 0.9
    strategy: str = "current-to-best/1/bin"

    def __post_init__(self):
        if not self.F > 0:
            raise ConfigurationError("DE scale factor F must be > 0")
        if not 0.0 <= self.Cr <= 1.0:
            raise ConfigurationError("DE crossover rate Cr must lie in [0, 1]")
        if self.strategy != "current-to-best/1/bin":
            raise ConfigurationError(f"unsupported DE strategy {self.strategy!r}")


def _check_start(budget: EvaluationBudget, n: int):
    if budget.remaining < n:
        raise ConfigurationError(f"budget of {budget.remaining} FEs cannot initialise {n} individuals")


def pso_velocity(V, X, pbest, gbest, config: PsoConfig, rng) -> np.ndarray:
    """Inertia-weighted velocity update, clipped to ``[v_min, v_max]``."""
    r1 = rng.random(X.shape)
    r2 = rng.random(X.shape)
    V = config.w * V + config.c1 * r1 * (pbest - X) + config.c2 * r2 * (gbest - X)
    return np.clip(V, config.v_min, config.v_max)


def pso_run(problem: Problem, config: PsoConfig, n: int, seed, budget: EvaluationBudget,
            trace_enabled: bool = True) -> RunResult:
    _check_start(budget, n)
    rng = make_rng(seed)
    bounds = problem.bounds
    start = budget.used_fe
    gens = (budget.remaining - n) // n

    X, f, viol, fit = init_population(n, bounds, rng, problem, budget)
    V = rng.uniform(config.v_min, config.v_max, size=X.shape)
    # personal bests are a separate population updated greedily
    personal = (X.copy(), f.copy(), viol.copy(), fit.copy())
    P, pfit = personal[0], personal[3]
    trace = [(budget.used_fe - start, float(pfit.min()))] if trace_enabled else []

    for _ in range(gens):
        g = P[np.argmin(pfit)]
        V = pso_velocity(V, X, P, g, config, rng)
        X = clamp_to_bounds(X + V, bounds)
        _accept(personal, (X, *evaluate_batch(problem, X, budget)))
        if trace_enabled:
            trace.append((budget.used_fe - start, float(pfit.min())))

    i = int(np.argmin(pfit))
    return RunResult(individual_at(*personal, i), budget.used_fe - start, gens, trace)


def distinct_pairs(n: int, rng):
    """Indices ``r1, r2`` per member with ``i``, ``r1``, ``r2`` pairwise distinct."""
    i = np.arange(n)
    r1 = (i + rng.integers(1, n, size=n)) % n
    lo, hi = np.minimum(i, r1), np.maximum(i, r1)
    r2 = rng.integers(0, n - 2, size=n)
    r2 = r2 + (r2 >= lo)
    r2 = r2 + (r2 >= hi)
    return r1, r2


def de_mutant(X, best, r1, r2, F: float) -> np.ndarray:
    """current-to-best/1: ``x_i + F*(x_best - x_i) + F*(x_r1 - x_r2)``."""
    return X + F * (best - X) + F * (X[r1] - X[r2])


def binomial_crossover(X, V, Cr: float, rng) -> np.ndarray:
    """Take mutant coordinates with probability ``Cr``; one random coordinate always."""
    n, d = X.shape
    mask = rng.random((n, d)) < Cr
    mask[np.arange(n), rng.integers(0, d, size=n)] = True
    return np.where(mask, V, X)


def de_run(problem: Problem, config: DeConfig, n: int, seed, budget: EvaluationBudget,
           trace_enabled: bool = True) -> RunResult:
    if n < 4:
        raise ConfigurationError("DE needs a population of at least 4")
    _check_start(budget, n)
    rng = make_rng(seed)
    bounds = problem.bounds
    start = budget.used_fe
    gens = (budget.remaining - n) // n

    pop = init_population(n, bounds, rng, problem, budget)
    X, fit = pop[0], pop[3]
    trace = [(budget.used_fe - start, float(fit.min()))] if trace_enabled else []

    for _ in range(gens):
        best = X[np.argmin(fit)].copy()
        r1, r2 = distinct_pairs(n, rng)
        mutant = de_mutant(X, best, r1, r2, config.F)
        trial = clamp_to_bounds(binomial_crossover(X, mutant, config.Cr, rng), bounds)
        _accept(pop, (trial, *evaluate_batch(problem, trial, budget)))
        if trace_enabled:
            trace.append((budget.used_fe - start, float(fit.min())))

    i = int(np.argmin(fit))
    return RunResult(individual_at(*pop, i), budget.used_fe - start, gens, trace)


def random_search_run(problem: Problem, n: int, seed, budget: EvaluationBudget,
                      trace_enabled: bool = True) -> RunResult:
    """Uniform sampling in batches of ``n`` until the budget is spent."""
    if budget.remaining < 1:
        raise ConfigurationError("random search needs at least one evaluation")
    rng = make_rng(seed)
    bounds = problem.bounds
    start = budget.used_fe
    best = None
    trace = []
    batches = 0
    while budget.remaining > 0:
        k = min(n, budget.remaining)
        X = np.minimum(rng.uniform(bounds.lower, bounds.upper, size=(k, bounds.dim)), bounds.upper)
        f, viol, fit = evaluate_batch(problem, X, budget)
        i = int(np.argmin(fit))
        if best is None or fit[i] <= best.fitness:
            best = individual_at(X, f, viol, fit, i)
        batches += 1
        if trace_enabled:
            trace.append((budget.used_fe - start, best.fitness))
    return RunResult(best, budget.used_fe - start, batches, trace)
