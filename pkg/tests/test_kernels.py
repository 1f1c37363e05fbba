import numpy as np
import pytest

from zsopt import kernels
from zsopt.kernels import BASE_FUNCTIONS, available_backends, get_backend

BACKENDS = available_backends()


def test_python_backend_always_available():
    assert "python" in BACKENDS


def test_selected_backend_is_known():
    assert kernels.BACKEND in ("compiled", "python")


@pytest.mark.skipif("compiled" not in BACKENDS, reason="extension not built")
@pytest.mark.parametrize("fid,name", list(enumerate(BASE_FUNCTIONS)))
@pytest.mark.parametrize("dim", [2, 10, 31])
def test_backends_agree_on_base_functions(fid, name, dim):
    rng = np.random.default_rng(fid * 100 + dim)
    Z = rng.uniform(-5, 5, size=(40, dim))
    # exercise Schwefel's out-of-range branches too
    Z[:5] *= 300
    compiled = get_backend("compiled").base_batch(fid, Z)
    python = get_backend("python").base_batch(fid, Z)
    np.testing.assert_allclose(compiled, python, rtol=1e-11, atol=1e-11)


@pytest.mark.skipif("compiled" not in BACKENDS, reason="extension not built")
@pytest.mark.parametrize("rotated", [True, False])
def test_backends_agree_on_shifted_rotated(rotated):
    rng = np.random.default_rng(5)
    d = 12
    X = rng.uniform(-100, 100, size=(30, d))
    shift = rng.uniform(-80, 80, d)
    M = np.linalg.qr(rng.standard_normal((d, d)))[0] if rotated else None
    offset = np.ones(d)
    a = get_backend("compiled").shifted_rotated_batch(3, X, shift, M, 0.02048, offset)
    b = get_backend("python").shifted_rotated_batch(3, X, shift, M, 0.02048, offset)
    np.testing.assert_allclose(a, b, rtol=1e-10)


@pytest.mark.skipif("compiled" not in BACKENDS, reason="extension not built")
def test_backends_agree_on_small_gear_grid():
    target = 1.0 / 6.931
    a = get_backend("compiled").gtd_grid_minimum(12, 30, target)
    b = get_backend("python").gtd_grid_minimum(12, 30, target)
    assert a[0] == b[0]
    assert a[1] == b[1]


def test_gear_grid_matches_naive_loop_on_tiny_grid():
    target = 0.37
    best = min(
        ((target - b * c / (a * d)) ** 2, (a, b, c, d))
        for a in range(2, 7) for d in range(2, 7) for b in range(2, 7) for c in range(2, 7)
    )
    for name in BACKENDS:
        value, point = get_backend(name).gtd_grid_minimum(2, 6, target)
        assert value == best[0]
        a, b, c, d = point
        assert (target - b * c / (a * d)) ** 2 == best[0]
