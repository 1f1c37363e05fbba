"""Six constrained engineering design problems under a static penalty.

Objectives and constraints are written against ``x[..., i]`` so the same
function serves a single position or an ``(n, D)`` batch. Constraint
functions return the stacked ``g_i`` values; ``g_i <= 0`` is feasible.
"""
from __future__ import annotations

import numpy as np

from . import kernels
from .core import Bounds, ConfigurationError, Problem, penalized_fitness

__all__ = ["TABLE", "NAMES", "make_engineering", "violation_report",
           "penalized_fitness", "gtd_objective", "gtd_grid_minimum", "GTD_RATIO"]

GTD_RATIO = 1.0 / 6.931
GTD_LOW, GTD_HIGH = 12, 60

# name -> (dim, constraint count), audited against every constructed problem
TABLE = {
    "CBD": (5, 1),
    "CBHD": (4, 6),
    "GTD": (4, 0),
    "IBD": (4, 2),
    "RCB": (3, 2),
    "SRD": (7, 11),
}
NAMES = tuple(TABLE)


def _stack(*gs):
    return np.stack(np.broadcast_arrays(*gs), axis=-1)


# --- cantilever beam -------------------------------------------------------

def cbd_objective(x):
    return 0.0624 * x[..., :5].sum(axis=-1)


def cbd_constraints(x):
    c = (61.0, 37.0, 19.0, 7.0, 1.0)
    g = sum(ci / x[..., i] ** 3 for i, ci in enumerate(c)) - 1.0
    return g[..., None]


# --- corrugated bulkhead ---------------------------------------------------
# x = (width b, depth h, length l, thickness t)

def _cbhd_span(x):
    b, h, l = x[..., 0], x[..., 1], x[..., 2]
    return b + np.sqrt(np.abs(l * l - h * h))


def cbhd_objective(x):
    b, l, t = x[..., 0], x[..., 2], x[..., 3]
    with np.errstate(divide="ignore", invalid="ignore"):
        return 5.885 * t * (b + l) / _cbhd_span(x)


def cbhd_constraints(x):
    b, h, l, t = (x[..., i] for i in range(4))
    span = _cbhd_span(x)
    return _stack(
        -t * h * (0.4 * b + l / 6.0) + 8.94 * span,
        -t * h * h * (0.2 * b + l / 12.0) + 2.2 * (8.94 * span) ** (4.0 / 3.0),
        -t + 0.0156 * b + 0.15,
        -t + 0.0156 * l + 0.15,
        -t + 1.05,
        -l + h,
    )


# --- gear train ------------------------------------------------------------
# x = (A, B, C, D) tooth counts, rounded at evaluation

def gtd_objective(x):
    n = np.round(np.asarray(x, dtype=float))
    return (GTD_RATIO - (n[..., 1] * n[..., 2]) / (n[..., 0] * n[..., 3])) ** 2


# --- I-beam vertical deflection -------------------------------------------
# x = (height h, flange width b, web thickness tw, flange thickness tf)

def ibd_objective(x):
    h, b, tw, tf = (x[..., i] for i in range(4))
    inertia = (tw * (h - 2.0 * tf) ** 3 / 12.0 + b * tf ** 3 / 6.0
               + 2.0 * b * tf * ((h - tf) / 2.0) ** 2)
    return 5000.0 / inertia


def ibd_constraints(x):
    h, b, tw, tf = (x[..., i] for i in range(4))
    web = h - 2.0 * tf
    area = 2.0 * b * tf + tw * web - 300.0
    stress = (18.0e4 * h / (tw * web ** 3 + 2.0 * b * tf * (4.0 * tf ** 2 + 3.0 * h * web))
              + 15.0e3 * b / (web * tw ** 3 + 2.0 * tf * b ** 3) - 6.0)
    return _stack(area, stress)


# --- reinforced concrete beam ---------------------------------------------
# x = (reinforcement area As, width b, depth h)

def rcb_objective(x):
    return 29.4 * x[..., 0] + 0.6 * x[..., 1] * x[..., 2]


def rcb_constraints(x):
    a, b, h = x[..., 0], x[..., 1], x[..., 2]
    return _stack(b / h - 4.0, 180.0 + 7.375 * a * a / h - a * b)


# --- speed reducer ---------------------------------------------------------

def srd_objective(x):
    x1, x2, x3, x4, x5, x6, x7 = (x[..., i] for i in range(7))
    return (0.7854 * x1 * x2 ** 2 * (3.3333 * x3 ** 2 + 14.9334 * x3 - 43.0934)
            - 1.508 * x1 * (x6 ** 2 + x7 ** 2)
            + 7.4777 * (x6 ** 3 + x7 ** 3)
            + 0.7854 * (x4 * x6 ** 2 + x5 * x7 ** 2))


def srd_constraints(x):
    x1, x2, x3, x4, x5, x6, x7 = (x[..., i] for i in range(7))
    return _stack(
        27.0 / (x1 * x2 ** 2 * x3) - 1.0,
        397.5 / (x1 * x2 ** 2 * x3 ** 2) - 1.0,
        1.93 * x4 ** 3 / (x2 * x3 * x6 ** 4) - 1.0,
        1.93 * x5 ** 3 / (x2 * x3 * x7 ** 4) - 1.0,
        np.sqrt((745.0 * x4 / (x2 * x3)) ** 2 + 16.9e6) / (110.0 * x6 ** 3) - 1.0,
        np.sqrt((745.0 * x5 / (x2 * x3)) ** 2 + 157.5e6) / (85.0 * x7 ** 3) - 1.0,
        x2 * x3 / 40.0 - 1.0,
        5.0 * x2 / x1 - 1.0,
        x1 / (12.0 * x2) - 1.0,
        (1.5 * x6 + 1.9) / x4 - 1.0,
        (1.1 * x7 + 1.9) / x5 - 1.0,
    )


_DEFS = {
    "CBD": ("Cantilever Beam Design", cbd_objective, cbd_constraints,
            [0.01] * 5, [100.0] * 5),
    "CBHD": ("Corrugated Bulkhead Design", cbhd_objective, cbhd_constraints,
             [0.0, 0.0, 0.0, 0.0], [100.0, 100.0, 100.0, 5.0]),
    "GTD": ("Gear Train Design", gtd_objective, None,
            [float(GTD_LOW)] * 4, [float(GTD_HIGH)] * 4),
    "IBD": ("I Beam Design", ibd_objective, ibd_constraints,
            [10.0, 10.0, 0.9, 0.9], [80.0, 50.0, 5.0, 5.0]),
    "RCB": ("Reinforced Concrete Beam", rcb_objective, rcb_constraints,
            [0.0, 0.0, 5.0], [15.0, 40.0, 10.0]),
    "SRD": ("Speed Reducer Design", srd_objective, srd_constraints,
            [2.6, 0.7, 17.0, 7.3, 7.3, 2.9, 5.0], [3.6, 0.8, 28.0, 8.3, 8.3, 3.9, 5.5]),
}


def make_engineering(name: str, penalty_weight: float = 1e8) -> Problem:
    try:
        _title, obj, cons, lo, hi = _DEFS[name]
    except KeyError:
        raise ConfigurationError(
            f"unknown engineering problem {name!r}; expected one of {', '.join(NAMES)}"
        ) from None
    dim, m = TABLE[name]
    probe = np.full(len(lo), 0.5) * (np.array(lo) + np.array(hi))
    got_m = 0 if cons is None else int(np.asarray(cons(probe)).shape[-1])
    if len(lo) != dim or got_m != m:
        raise ConfigurationError(
            f"{name}: built with D={len(lo)}, m={got_m}; expected D={dim}, m={m}"
        )
    return Problem(
        name=name,
        bounds=Bounds(lo, hi),
        objective=obj,
        constraints=cons,
        n_constraints=m,
        penalty_weight=penalty_weight,
        vectorized=True,
    )


def violation_report(problem: Problem, x):
    """``(feasible, per_constraint)`` with ``per_constraint[i] = max(0, g_i(x))``."""
    if not problem.n_constraints:
        return True, np.zeros(0)
    g = np.asarray(problem.constraints(np.asarray(x, dtype=float)), dtype=float)
    per = np.maximum(g, 0.0)
    return bool(np.all(per == 0.0)), per


def gtd_grid_minimum(lo: int = GTD_LOW, hi: int = GTD_HIGH):
    """Brute-force gear-train optimum over every integer tooth-count combination.

    Returns ``(value, (A, B, C, D))``.
    """
    return kernels.gtd_grid_minimum(lo, hi, GTD_RATIO)
