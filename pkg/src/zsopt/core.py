"""Shared domain types and budget-metered evaluation.

Every optimizer in the package consumes a :class:`Problem` and an
:class:`EvaluationBudget`; positions travel as plain ``numpy`` arrays and are
only wrapped in :class:`Individual` at the API boundary.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

DEFAULT_PENALTY_WEIGHT = 1e8


class ZsoptError(Exception):
    """Base class for errors raised by this package."""


class ConfigurationError(ZsoptError, ValueError):
    """Invalid configuration or contract violation detected before a run."""


class EvaluationError(ZsoptError, ValueError):
    """A candidate could not be evaluated (e.g. a non-finite coordinate)."""


class BudgetExhausted(ZsoptError):
    """Raised when an evaluation would exceed the fitness-evaluation cap."""


@dataclass(frozen=True)
class Bounds:
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float).reshape(-1)
        upper = np.asarray(self.upper, dtype=float).reshape(-1)
        if lower.size < 1 or lower.shape != upper.shape:
            raise ConfigurationError("bounds need matching lower/upper vectors with D >= 1")
        if not np.all(lower < upper):
            bad = int(np.flatnonzero(~(lower < upper))[0])
            raise ConfigurationError(f"lower[{bad}] must be < upper[{bad}]")
        lower.setflags(write=False)
        upper.setflags(write=False)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def uniform(cls, low: float, high: float, dim: int) -> "Bounds":
        return cls(np.full(dim, float(low)), np.full(dim, float(high)))

    @property
    def dim(self) -> int:
        return self.lower.size

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))


@dataclass(frozen=True)
class Problem:
    """A box-bounded minimisation problem with optional ``g(x) <= 0`` constraints.

    ``objective`` maps a position to a float. When ``vectorized`` is true it
    must also accept an ``(n, D)`` array and return ``n`` values; the same
    holds for ``constraints``, which returns the ``m`` constraint values
    (shape ``(m,)`` or ``(n, m)``).
    """

    name: str
    bounds: Bounds
    objective: Callable
    constraints: Optional[Callable] = None
    n_constraints: int = 0
    penalty_weight: float = DEFAULT_PENALTY_WEIGHT
    known_bias: Optional[float] = None
    vectorized: bool = False

    def __post_init__(self):
        if (self.constraints is None) != (self.n_constraints == 0):
            raise ConfigurationError(f"{self.name}: constraints and n_constraints disagree")
        if self.n_constraints and not self.penalty_weight > 0:
            raise ConfigurationError(f"{self.name}: penalty_weight must be > 0")

    @property
    def dim(self) -> int:
        return self.bounds.dim


@dataclass(frozen=True)
class Individual:
    position: np.ndarray
    objective_value: float
    violation_sum: float
    fitness: float


@dataclass
class EvaluationBudget:
    max_fe: int
    used_fe: int = 0

    def __post_init__(self):
        if self.max_fe < 1:
            raise ConfigurationError("max_fe must be a positive integer")

    @property
    def remaining(self) -> int:
        return self.max_fe - self.used_fe

    def charge(self, n: int = 1) -> None:
        if n > self.remaining:
            raise BudgetExhausted(
                f"requested {n} evaluations with {self.remaining} of {self.max_fe} left"
            )
        self.used_fe += n


@dataclass
class RunResult:
    best: Individual
    fe_used: int
    generations: int
    # (fe_used, best_fitness) after initialisation and after every generation
    trace: list = field(default_factory=list)


def make_rng(seed) -> np.random.Generator:
    """Seeded generator; identical seeds give identical streams within one build."""
    return np.random.default_rng(seed)


def clamp_to_bounds(x, bounds: Bounds) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    finite = np.isfinite(x)
    if not finite.all():
        bad = np.argwhere(~finite)[0]
        raise EvaluationError(f"non-finite coordinate in dimension {int(bad[-1])}")
    return np.minimum(bounds.upper, np.maximum(bounds.lower, x))


def penalized_fitness(f_value, violations, w: float):
    """Static penalty: ``f + w * sum(max(0, g_i))``."""
    violations = np.asarray(violations, dtype=float)
    return f_value + w * np.maximum(violations, 0.0).sum(axis=-1)


def _score(problem: Problem, X: np.ndarray):
    """Objective, violation sum and fitness for a batch of positions (no budget)."""
    with np.errstate(all="ignore"):
        return _score_unguarded(problem, X)


def _score_unguarded(problem: Problem, X: np.ndarray):
    if problem.vectorized:
        f = np.asarray(problem.objective(X), dtype=float).reshape(len(X))
        g = None
        if problem.n_constraints:
            g = np.asarray(problem.constraints(X), dtype=float).reshape(len(X), -1)
    else:
        f = np.array([float(problem.objective(x)) for x in X], dtype=float)
        g = None
        if problem.n_constraints:
            g = np.array([np.asarray(problem.constraints(x), dtype=float) for x in X])
    if g is None:
        viol = np.zeros(len(X))
    else:
        viol = np.maximum(g, 0.0).sum(axis=1)
        viol = np.where(np.isnan(viol), np.inf, viol)
    fit = f + problem.penalty_weight * viol if problem.n_constraints else f.copy()
    fit = np.where(np.isfinite(fit), fit, np.inf)
    return f, viol, fit


def evaluate_batch(problem: Problem, X, budget: EvaluationBudget):
    """Evaluate ``n`` positions at a cost of ``n`` FEs, all or nothing.

    Returns ``(objective_values, violation_sums, fitness)`` arrays.
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    budget.charge(len(X))
    return _score(problem, X)


def evaluate(problem: Problem, x, budget: EvaluationBudget) -> Individual:
    x = np.array(x, dtype=float)
    budget.charge(1)
    f, viol, fit = _score(problem, x[None, :])
    return Individual(x, float(f[0]), float(viol[0]), float(fit[0]))


def init_population(n: int, bounds: Bounds, rng: np.random.Generator,
                    problem: Problem, budget: EvaluationBudget):
    """Uniform random population, evaluated. Returns ``(X, f, viol, fit)``."""
    if n > budget.remaining:
        raise BudgetExhausted(f"population of {n} exceeds remaining budget {budget.remaining}")
    X = rng.uniform(bounds.lower, bounds.upper, size=(n, bounds.dim))
    # guard against the half-open interval rounding onto ``upper``
    X = np.minimum(X, bounds.upper)
    f, viol, fit = evaluate_batch(problem, X, budget)
    return X, f, viol, fit


def individual_at(X, f, viol, fit, i: int) -> Individual:
    return Individual(np.array(X[i]), float(f[i]), float(viol[i]), float(fit[i]))
