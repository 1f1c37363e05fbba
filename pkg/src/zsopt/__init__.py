"""Zoological search optimization with benchmark problems, baselines and statistics."""
from .core import (
    Bounds,
    BudgetExhausted,
    ConfigurationError,
    EvaluationBudget,
    EvaluationError,
    Individual,
    Problem,
    RunResult,
    clamp_to_bounds,
    evaluate,
    init_population,
    make_rng,
    penalized_fitness,
)
from .baselines import DeConfig, PsoConfig, de_run, pso_run, random_search_run
from .engineering import make_engineering, violation_report
from .kernels import BACKEND
from .problems import base_function, make_benchmark, make_catalog_problem, random_rotation
from .zso import HyperSchedule, ZsoConfig, schedule_params, zso_run

__version__ = "0.1.0"
