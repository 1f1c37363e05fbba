"""Zoological search optimization (ZSO).

Each generation runs two sweeps over the population, each followed by its own
evaluation and greedy replacement:

1. prey-predator interaction: move toward the current best individual and
   away from the current worst, step scale ``alpha``;
2. social flocking: move toward the population mean and a random flock-mate,
   step scale ``beta``.

A generation therefore costs ``2 * N`` evaluations, so for a fixed budget ZSO
runs half as many generations as a one-sweep optimizer. Best and worst are
found by linear scans; there is no fitness sort.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    ConfigurationError,
    EvaluationBudget,
    Individual,
    Problem,
    RunResult,
    clamp_to_bounds,
    evaluate_batch,
    individual_at,
    init_population,
    make_rng,
)

SCHEDULE_KINDS = ("constant", "linear", "uniform", "gaussian")


@dataclass(frozen=True)
class HyperSchedule:
    """Per-generation policy for the step scales ``(alpha, beta)``."""

    kind: str = "gaussian"
    constant: tuple = (1.0, 1.0)
    uniform_range: tuple = (0.5, 1.5)
    gauss_mean: float = 1.0
    gauss_std: float = 0.5

    def __post_init__(self):
        if self.kind not in SCHEDULE_KINDS:
            raise ConfigurationError(
                f"unknown schedule {self.kind!r}; expected one of {SCHEDULE_KINDS}"
            )


@dataclass(frozen=True)
class ZsoConfig:
    population_size: int = 100
    schedule: HyperSchedule = field(default_factory=HyperSchedule)
    seed: int = 0
    trace_enabled: bool = True

    def __post_init__(self):
        if self.population_size < 4:
            raise ConfigurationError("population_size must be >= 4")


def draw_raw(schedule: HyperSchedule, rng) -> tuple:
    """Unclamped ``(alpha, beta)`` draw for the random schedules."""
    if schedule.kind == "uniform":
        lo, hi = schedule.uniform_range
        a, b = rng.uniform(lo, hi, size=2)
    elif schedule.kind == "gaussian":
        a, b = rng.normal(schedule.gauss_mean, schedule.gauss_std, size=2)
    else:
        raise ConfigurationError(f"{schedule.kind} schedule has no random draw")
    return float(a), float(b)


def schedule_params(schedule: HyperSchedule, t: int, t_max: int, rng) -> tuple:
    """``(alpha, beta)`` for 0-based generation ``t`` of ``t_max``."""
    if t_max < 1 or not 0 <= t <= t_max:
        raise ConfigurationError(f"generation index {t} outside [0, {t_max}]")
    kind = schedule.kind
    if kind == "constant":
        return tuple(float(v) for v in schedule.constant)
    if kind == "linear":
        v = 2.0 * (1.0 - t / t_max)
        return v, v
    a, b = draw_raw(schedule, rng)
    if kind == "gaussian":
        # a negative scale would swap attraction and repulsion
        a, b = max(a, 0.0), max(b, 0.0)
    return a, b


def _check_shapes(*arrays):
    d = np.shape(arrays[0])[-1]
    for a in arrays[1:]:
        if np.shape(a)[-1] != d:
            raise ConfigurationError("dimension mismatch between operator inputs")


def prey_predator_move(x, x_best, x_worst, alpha: float, rng) -> np.ndarray:
    """``x + alpha*r1*(best - x) + alpha*r2*(x - worst)`` with per-coordinate ``r ~ U(0,1)``.

    ``x`` may be a single position or an ``(N, D)`` population. The result is
    not clipped to the box.
    """
    x = np.asarray(x, dtype=float)
    _check_shapes(x, x_best, x_worst)
    r1 = rng.random(x.shape)
    r2 = rng.random(x.shape)
    return x + alpha * r1 * (x_best - x) + alpha * r2 * (x - x_worst)


def social_flock_move(x, pop_mean, x_mate, beta: float, rng) -> np.ndarray:
    """``x + beta*r3*(mean - x) + beta*r4*(mate - x)`` with per-coordinate ``r ~ U(0,1)``."""
    x = np.asarray(x, dtype=float)
    _check_shapes(x, pop_mean, x_mate)
    r3 = rng.random(x.shape)
    r4 = rng.random(x.shape)
    return x + beta * r3 * (pop_mean - x) + beta * r4 * (x_mate - x)


def greedy_replace(incumbent: Individual, candidate: Individual) -> Individual:
    """Keep the candidate unless it is strictly worse; ties go to the candidate."""
    return candidate if candidate.fitness <= incumbent.fitness else incumbent


def _accept(pop, cand):
    """Vectorised greedy replacement of ``pop`` rows by ``cand`` rows."""
    X, f, viol, fit = pop
    CX, cf, cviol, cfit = cand
    take = cfit <= fit
    X[take] = CX[take]
    f[take] = cf[take]
    viol[take] = cviol[take]
    fit[take] = cfit[take]
    return take


def random_mates(n: int, rng) -> np.ndarray:
    """For each index ``i`` a uniformly chosen index ``!= i``."""
    return (np.arange(n) + rng.integers(1, n, size=n)) % n


def zso_run(problem: Problem, config: ZsoConfig, budget: EvaluationBudget) -> RunResult:
    n = config.population_size
    if budget.remaining < n:
        raise ConfigurationError(
            f"budget of {budget.remaining} FEs cannot initialise {n} individuals"
        )
    bounds = problem.bounds
    rng = make_rng(config.seed)
    start = budget.used_fe
    t_max = (budget.remaining - n) // (2 * n)

    X, f, viol, fit = init_population(n, bounds, rng, problem, budget)
    pop = (X, f, viol, fit)
    trace = [(budget.used_fe - start, float(fit.min()))] if config.trace_enabled else []

    for t in range(t_max):
        alpha, beta = schedule_params(config.schedule, t, t_max, rng)

        best, worst = X[np.argmin(fit)].copy(), X[np.argmax(fit)].copy()
        cand = clamp_to_bounds(prey_predator_move(X, best, worst, alpha, rng), bounds)
        _accept(pop, (cand, *evaluate_batch(problem, cand, budget)))

        mean = X.mean(axis=0)
        mates = X[random_mates(n, rng)]
        cand = clamp_to_bounds(social_flock_move(X, mean, mates, beta, rng), bounds)
        _accept(pop, (cand, *evaluate_batch(problem, cand, budget)))

        if config.trace_enabled:
            trace.append((budget.used_fe - start, float(fit.min())))

    i = int(np.argmin(fit))
    return RunResult(
        best=individual_at(X, f, viol, fit, i),
        fe_used=budget.used_fe - start,
        generations=t_max,
        trace=trace,
    )
