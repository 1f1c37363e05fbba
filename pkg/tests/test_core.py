import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from zsopt.core import (
    Bounds,
    BudgetExhausted,
    ConfigurationError,
    EvaluationBudget,
    EvaluationError,
    Problem,
    clamp_to_bounds,
    evaluate,
    evaluate_batch,
    init_population,
    make_rng,
    penalized_fitness,
)

from conftest import sphere_problem

BOX = Bounds.uniform(-100, 100, 2)


def constrained_problem(f_value=5.0, g=(2.0, -1.0), w=1e8):
    return Problem(
        "toy",
        Bounds.uniform(-1, 1, 2),
        objective=lambda x: f_value,
        constraints=lambda x: np.array(g),
        n_constraints=len(g),
        penalty_weight=w,
    )


def test_bounds_reject_inverted_box():
    with pytest.raises(ConfigurationError):
        Bounds([0.0, 1.0], [1.0, 1.0])


def test_clamp_clips_outside_point():
    np.testing.assert_array_equal(clamp_to_bounds([150, -150], BOX), [100, -100])


def test_clamp_identity_inside_and_on_boundary():
    np.testing.assert_array_equal(clamp_to_bounds([3.5, -7.25], BOX), [3.5, -7.25])
    np.testing.assert_array_equal(clamp_to_bounds([-100, 100], BOX), [-100, 100])


@pytest.mark.parametrize("bad", [np.nan, np.inf, -np.inf])
def test_clamp_rejects_non_finite_and_names_dimension(bad):
    with pytest.raises(EvaluationError, match="dimension 1"):
        clamp_to_bounds([0.0, bad], BOX)


@given(arrays(np.float64, 2, elements=st.floats(-1e6, 1e6)))
def test_clamp_idempotent_and_in_bounds(x):
    once = clamp_to_bounds(x, BOX)
    assert BOX.contains(once)
    np.testing.assert_array_equal(clamp_to_bounds(once, BOX), once)


def test_evaluate_unconstrained_has_no_penalty():
    p = sphere_problem(3)
    budget = EvaluationBudget(5)
    ind = evaluate(p, [1.0, 2.0, 3.0], budget)
    assert ind.objective_value == 14.0
    assert ind.violation_sum == 0.0
    assert ind.fitness == ind.objective_value
    assert budget.used_fe == 1


def test_evaluate_static_penalty_substitution():
    budget = EvaluationBudget(5)
    ind = evaluate(constrained_problem(), [0.0, 0.0], budget)
    assert ind.violation_sum == 2.0
    assert ind.fitness == 5.0 + 2e8


def test_penalty_weight_is_configurable():
    ind = evaluate(constrained_problem(w=1e7), [0.0, 0.0], EvaluationBudget(1))
    assert ind.fitness == 5.0 + 2e7


def test_evaluate_at_cap_raises_without_charging():
    budget = EvaluationBudget(2, used_fe=2)
    with pytest.raises(BudgetExhausted):
        evaluate(sphere_problem(2), [0.0, 0.0], budget)
    assert budget.used_fe == 2


def test_evaluate_does_not_mutate_input():
    x = np.array([1.0, -2.0])
    evaluate(sphere_problem(2), x, EvaluationBudget(1))
    np.testing.assert_array_equal(x, [1.0, -2.0])


def test_non_finite_objective_maps_to_infinite_fitness():
    p = Problem("nan", Bounds.uniform(-1, 1, 2), lambda x: float("nan"))
    ind = evaluate(p, [0.0, 0.0], EvaluationBudget(1))
    assert ind.fitness == np.inf


def test_batch_evaluation_is_all_or_nothing():
    budget = EvaluationBudget(10, used_fe=8)
    with pytest.raises(BudgetExhausted):
        evaluate_batch(sphere_problem(2), np.zeros((3, 2)), budget)
    assert budget.used_fe == 8


def test_init_population_paper_size():
    bounds = Bounds.uniform(-100, 100, 30)
    budget = EvaluationBudget(1000)
    X, f, viol, fit = init_population(100, bounds, make_rng(1), sphere_problem(30), budget)
    assert X.shape == (100, 30)
    assert np.all(X >= -100) and np.all(X < 100)
    assert budget.used_fe == 100
    np.testing.assert_array_equal(fit, f)


def test_init_population_tight_box():
    bounds = Bounds([0.0], [1e-12])
    p = Problem("tight", bounds, lambda x: float(x[0]))
    X, *_ = init_population(1, bounds, make_rng(3), p, EvaluationBudget(1))
    assert 0.0 <= X[0, 0] <= 1e-12


def test_init_population_deterministic():
    bounds = Bounds.uniform(-5, 5, 4)
    a = init_population(10, bounds, make_rng(7), sphere_problem(4), EvaluationBudget(10))
    b = init_population(10, bounds, make_rng(7), sphere_problem(4), EvaluationBudget(10))
    for u, v in zip(a, b):
        np.testing.assert_array_equal(u, v)


def test_init_population_over_budget():
    with pytest.raises(BudgetExhausted):
        init_population(5, BOX, make_rng(0), sphere_problem(2), EvaluationBudget(4))


def test_uniform_and_normal_stream_statistics():
    rng = make_rng(2024)
    a, b = -3.0, 7.0
    u = rng.uniform(a, b, 100_000)
    assert np.all((u >= a) & (u < b))
    assert abs(u.mean() - (a + b) / 2) < 0.01 * (b - a)
    z = rng.standard_normal(100_000)
    assert abs(z.mean()) < 0.02
    assert abs(z.std() - 1.0) < 0.02


@settings(max_examples=50)
@given(
    f=st.floats(-1e6, 1e6),
    g=st.lists(st.floats(-10, 10), max_size=5),
)
def test_penalized_fitness_identity(f, g):
    w = 1e8
    expected = f + w * sum(max(0.0, v) for v in g)
    assert penalized_fitness(f, g, w) == pytest.approx(expected, rel=1e-12, abs=1e-6)
