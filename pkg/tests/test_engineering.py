import numpy as np
import pytest

from zsopt.core import ConfigurationError, EvaluationBudget, evaluate
from zsopt.engineering import (
    GTD_RATIO,
    NAMES,
    TABLE,
    gtd_grid_minimum,
    gtd_objective,
    make_engineering,
    penalized_fitness,
    violation_report,
)

# best-known designs from the engineering-design literature
LITERATURE = {
    "CBD": ([6.0160159, 5.3091739, 4.4943296, 3.5014750, 2.1527133], 1.3399576),
    "CBHD": ([57.69230, 34.14762, 57.69230, 1.05], 6.842958),
    "IBD": ([80.0, 50.0, 0.9, 2.3217922], 0.0130741),
    "SRD": ([3.5, 0.7, 17.0, 7.3, 7.7153199, 3.3502147, 5.2866545], 2994.4711),
}


def test_penalized_fitness_cases():
    assert penalized_fitness(3.0, [-1.0, 0.0], 1e8) == 3.0
    assert penalized_fitness(5.0, [2.0, -1.0], 1e8) == 5.0 + 2e8
    assert penalized_fitness(0.0, [], 1e8) == 0.0


def test_penalty_monotone_in_each_violation():
    base = [0.5, -1.0, 0.25]
    f0 = penalized_fitness(1.0, base, 1e8)
    for i in range(3):
        bumped = list(base)
        bumped[i] = max(bumped[i], 0.0) + 0.1
        assert penalized_fitness(1.0, bumped, 1e8) > f0


@pytest.mark.parametrize("name", NAMES)
def test_dimension_and_constraint_audit(name):
    p = make_engineering(name)
    assert (p.dim, p.n_constraints) == TABLE[name]


def test_table_counts():
    assert TABLE["GTD"] == (4, 0)
    assert TABLE["SRD"] == (7, 11)
    assert TABLE == {"CBD": (5, 1), "CBHD": (4, 6), "GTD": (4, 0),
                     "IBD": (4, 2), "RCB": (3, 2), "SRD": (7, 11)}


def test_unknown_problem():
    with pytest.raises(ConfigurationError):
        make_engineering("WELDED")


def test_gtd_at_grid_minimum():
    assert abs(gtd_objective(np.array([49.0, 19.0, 16.0, 43.0])) - 2.700857e-12) < 1e-15


def test_gtd_rounds_inside_objective():
    assert gtd_objective(np.array([48.6, 19.4, 15.7, 43.2])) == gtd_objective(np.array([49, 19, 16, 43.0]))


def test_gtd_oracle_is_grid_minimum():
    value, point = gtd_grid_minimum()
    assert abs(value - 2.700857e-12) < 1e-15
    assert gtd_objective(np.array(point, dtype=float)) == value
    assert GTD_RATIO == 1 / 6.931


@pytest.mark.parametrize("name", sorted(LITERATURE))
def test_literature_designs_reproduce_reported_objective(name):
    x, f_star = LITERATURE[name]
    p = make_engineering(name)
    assert p.objective(np.array(x)) == pytest.approx(f_star, rel=2e-5)


def test_cbd_reference_optimum_is_feasible():
    x, _ = LITERATURE["CBD"]
    # tiny outward nudge: reported digits sit on the constraint boundary
    feasible, per = violation_report(make_engineering("CBD"), np.array(x) * (1 + 1e-6))
    assert feasible and per.shape == (1,) and per[0] == 0.0


def test_gtd_violation_report_is_empty():
    feasible, per = violation_report(make_engineering("GTD"), np.array([20.0, 20, 20, 20]))
    assert feasible and per.size == 0


def test_single_violation_reported_once():
    p = make_engineering("RCB")
    # b/h = 5 breaks the aspect-ratio constraint only
    x = np.array([15.0, 40.0, 8.0])
    feasible, per = violation_report(p, x)
    assert not feasible
    assert np.count_nonzero(per) == 1 and per[0] > 0


@pytest.mark.parametrize("name", NAMES)
def test_evaluation_is_pure_and_finite_on_box(name, rng):
    p = make_engineering(name)
    X = rng.uniform(p.bounds.lower, p.bounds.upper, size=(200, p.dim))
    budget = EvaluationBudget(400)
    first = [evaluate(p, x, budget).fitness for x in X]
    second = [evaluate(p, x, budget).fitness for x in X]
    assert first == second
    assert not np.any(np.isnan(first))


@pytest.mark.parametrize("name", NAMES)
def test_feasible_fitness_equals_raw_objective(name):
    p = make_engineering(name)
    if name in LITERATURE:
        x = np.array(LITERATURE[name][0])
    else:
        x = {"GTD": np.array([49.0, 19, 16, 43]), "RCB": np.array([7.0, 30.0, 9.0])}[name]
    ind = evaluate(p, x, EvaluationBudget(1))
    if ind.violation_sum == 0.0:
        assert ind.fitness == ind.objective_value
