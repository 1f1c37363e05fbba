import itertools
from fractions import Fraction

import numpy as np
import pytest

from zsopt.core import Bounds, Problem


def sphere(x):
    x = np.asarray(x, dtype=float)
    return float(np.sum(x * x))


def sphere_problem(dim=10, low=-100.0, high=100.0):
    return Problem("sphere", Bounds.uniform(low, high, dim), sphere)


class CountingObjective:
    """Scalar objective wrapper counting every call."""

    def __init__(self, fn):
        self.fn = fn
        self.calls = 0

    def __call__(self, x):
        self.calls += 1
        return self.fn(x)


class OnesRng:
    """Stand-in generator whose uniform draws are all exactly 1."""

    def random(self, shape=None):
        return np.ones(shape)


def exact_u_pvalue(n1, n2, u):
    """Two-sided exact p by enumerating every rank subset (no ties)."""
    n = n1 + n2
    us = [sum(c) - n1 * (n1 + 1) // 2 for c in itertools.combinations(range(1, n + 1), n1)]
    total = len(us)
    lower = sum(1 for v in us if v <= u)
    upper = sum(1 for v in us if v >= u)
    return float(min(Fraction(1), Fraction(2 * min(lower, upper), total)))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
