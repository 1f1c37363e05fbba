"""Compare the compiled and pure-Python kernel backends.

Usage: python benchmarks/bench_kernels.py [--repeat 5] [--dim 30]

Times every base function on a (100, D) batch, the gear-train grid scan, and
two end-to-end ZSO runs per backend. Kernel outputs are checked for agreement.
"""
import argparse
import time
from contextlib import contextmanager

import numpy as np

from zsopt import engineering, kernels, problems
from zsopt.core import EvaluationBudget
from zsopt.zso import HyperSchedule, ZsoConfig, zso_run


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


@contextmanager
def backend(mod):
    saved = kernels.shifted_rotated_batch
    kernels.shifted_rotated_batch = mod.shifted_rotated_batch
    try:
        yield
    finally:
        kernels.shifted_rotated_batch = saved


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--dim", type=int, default=30)
    args = parser.parse_args(argv)

    names = kernels.available_backends()
    if "compiled" not in names:
        print("compiled backend not built; run `pip install -e . --no-build-isolation` first")
        return 1
    mods = {n: kernels.get_backend(n) for n in names}
    rng = np.random.default_rng(0)
    Z = rng.uniform(-5, 5, size=(100, args.dim))

    print(f"{'kernel':<32} {'compiled ms':>12} {'python ms':>12} {'speedup':>8}")
    rows = []
    for fid, name in enumerate(kernels.BASE_FUNCTIONS):
        res = {n: best_of(lambda m=m: m.base_batch(fid, Z), args.repeat) for n, m in mods.items()}
        np.testing.assert_allclose(res["compiled"][1], res["python"][1], rtol=1e-10)
        rows.append((name, res["compiled"][0], res["python"][0]))

    grid = (engineering.GTD_LOW, engineering.GTD_HIGH, engineering.GTD_RATIO)
    res = {n: best_of(lambda m=m: m.gtd_grid_minimum(*grid), 1) for n, m in mods.items()}
    assert res["compiled"][1] == res["python"][1]
    rows.append(("gear-train grid (49^4)", res["compiled"][0], res["python"][0]))

    cfg = ZsoConfig(100, HyperSchedule("gaussian"), 0)
    for tag in ("cec2014-f12", "cec2022-f1"):
        p = problems.make_catalog_problem(tag, args.dim, 1)
        res = {}
        for n, m in mods.items():
            with backend(m):
                res[n] = best_of(lambda: zso_run(p, cfg, EvaluationBudget(1000 * args.dim)), 1)
        base = problems.CATALOG[tag].base
        rows.append((f"zso run {base} D={args.dim}", res["compiled"][0], res["python"][0]))

    for name, c, py in rows:
        print(f"{name:<32} {c * 1e3:>12.3f} {py * 1e3:>12.3f} {py / c:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
