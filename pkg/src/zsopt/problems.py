"""Shifted, rotated and biased synthetic test functions.

Instances follow the usual CEC construction ``f(x) = base(z) + bias`` with
``z = scale * M (x - o) + z*``, where ``z*`` is the base function's minimiser,
so that ``f(o) == bias`` exactly. Shift vectors and rotation matrices are
generated from a seed rather than read from the official data files.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .core import Bounds, ConfigurationError, Problem

SEARCH_LOW, SEARCH_HIGH = -100.0, 100.0
SHIFT_FRACTION = 0.8


@dataclass(frozen=True)
class BaseSpec:
    """Input scaling and minimiser used to map ``x = o`` onto ``z = z*``."""

    scale: float
    minimizer: float
    min_dim: int = 1


BASE_SPECS = {
    "elliptic": BaseSpec(1.0, 0.0),
    "bent-cigar": BaseSpec(1.0, 0.0, 2),
    "discus": BaseSpec(1.0, 0.0, 2),
    "rosenbrock": BaseSpec(2.048 / 100.0, 1.0, 2),
    "ackley": BaseSpec(1.0, 0.0),
    "weierstrass": BaseSpec(0.5 / 100.0, 0.0),
    "griewank": BaseSpec(600.0 / 100.0, 0.0),
    "rastrigin": BaseSpec(5.12 / 100.0, 0.0),
    "schwefel": BaseSpec(1000.0 / 100.0, 420.9687462275036),
    "katsuura": BaseSpec(5.0 / 100.0, 0.0),
    "happycat": BaseSpec(5.0 / 100.0, -1.0),
    "hgbat": BaseSpec(5.0 / 100.0, -1.0),
    "expanded-griewank-rosenbrock": BaseSpec(5.0 / 100.0, 1.0, 2),
    "expanded-schaffer-f6": BaseSpec(1.0, 0.0, 2),
    "zakharov": BaseSpec(1.0, 0.0),
    "levy": BaseSpec(1.0, 1.0, 2),
    "rastrigin-noncontinuous": BaseSpec(5.12 / 100.0, 0.0),
}

_FID = {name: i for i, name in enumerate(kernels.BASE_FUNCTIONS)}
assert set(_FID) == set(BASE_SPECS)


@dataclass(frozen=True)
class CatalogEntry:
    tag: str
    base: str
    bias: float
    rotated: bool = True


# CEC2014 f1-f16 and CEC2022 f1-f5; hybrid and composition functions are not built.
CATALOG = {
    e.tag: e
    for e in [
        CatalogEntry("cec2014-f1", "elliptic", 100.0),
        CatalogEntry("cec2014-f2", "bent-cigar", 200.0),
        CatalogEntry("cec2014-f3", "discus", 300.0),
        CatalogEntry("cec2014-f4", "rosenbrock", 400.0),
        CatalogEntry("cec2014-f5", "ackley", 500.0),
        CatalogEntry("cec2014-f6", "weierstrass", 600.0),
        CatalogEntry("cec2014-f7", "griewank", 700.0),
        CatalogEntry("cec2014-f8", "rastrigin", 800.0, rotated=False),
        CatalogEntry("cec2014-f9", "rastrigin", 900.0),
        CatalogEntry("cec2014-f10", "schwefel", 1000.0, rotated=False),
        CatalogEntry("cec2014-f11", "schwefel", 1100.0),
        CatalogEntry("cec2014-f12", "katsuura", 1200.0),
        CatalogEntry("cec2014-f13", "happycat", 1300.0),
        CatalogEntry("cec2014-f14", "hgbat", 1400.0),
        CatalogEntry("cec2014-f15", "expanded-griewank-rosenbrock", 1500.0),
        CatalogEntry("cec2014-f16", "expanded-schaffer-f6", 1600.0),
        CatalogEntry("cec2022-f1", "zakharov", 300.0),
        CatalogEntry("cec2022-f2", "rosenbrock", 400.0),
        CatalogEntry("cec2022-f3", "expanded-schaffer-f6", 600.0),
        CatalogEntry("cec2022-f4", "rastrigin-noncontinuous", 800.0),
        CatalogEntry("cec2022-f5", "levy", 900.0),
    ]
}


def suite_tags(suite: str) -> list:
    prefix = suite + "-"
    tags = [t for t in CATALOG if t.startswith(prefix)]
    if not tags:
        raise ConfigurationError(f"unknown synthetic suite {suite!r}")
    return tags


def _function_id(name: str) -> int:
    try:
        return _FID[name]
    except KeyError:
        raise ConfigurationError(f"unknown base function {name!r}") from None


def base_function(name: str, z) -> float:
    """Unshifted, unrotated, unbiased base function value at ``z``."""
    fid = _function_id(name)
    z = np.asarray(z, dtype=float).reshape(-1)
    if z.size < BASE_SPECS[name].min_dim:
        raise ConfigurationError(f"{name} needs D >= {BASE_SPECS[name].min_dim}")
    return float(kernels.base_batch(fid, z[None, :])[0])


def base_minimizer(name: str, dim: int) -> np.ndarray:
    return np.full(dim, BASE_SPECS[name].minimizer)


def random_rotation(d: int, seed) -> np.ndarray:
    """Seeded orthogonal matrix: QR of a Gaussian matrix with sign-fixed ``R``."""
    if d < 1:
        raise ConfigurationError("rotation dimension must be >= 1")
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    # make diag(R) positive so the factorisation (and hence Q) is unique
    return q * np.where(np.diag(r) < 0, -1.0, 1.0)


@dataclass(frozen=True)
class ShiftedRotatedFunction:
    """Picklable objective ``base(scale * M (x - o) + z*) + bias``."""

    base: str
    shift: np.ndarray
    rotation: Optional[np.ndarray]
    bias: float

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        spec = BASE_SPECS[self.base]
        X = np.atleast_2d(x)
        offset = np.full(X.shape[1], spec.minimizer)
        vals = kernels.shifted_rotated_batch(
            _FID[self.base], X, self.shift, self.rotation, spec.scale, offset
        ) + self.bias
        return float(vals[0]) if x.ndim == 1 else vals


def make_benchmark(base: str, d: int, seed, bias: float, rotated: bool = True,
                   name: Optional[str] = None) -> Problem:
    """Build a shifted (and optionally rotated) instance of a base function."""
    _function_id(base)
    if d < 2:
        raise ConfigurationError("synthetic benchmarks need d >= 2")
    rng = np.random.default_rng(seed)
    half = SHIFT_FRACTION * (SEARCH_HIGH - SEARCH_LOW) / 2.0
    shift = rng.uniform(-half, half, size=d)
    rotation = random_rotation(d, rng.integers(2**63)) if rotated else None
    fn = ShiftedRotatedFunction(base, shift, rotation, float(bias))
    return Problem(
        name=name or f"{base}-D{d}",
        bounds=Bounds.uniform(SEARCH_LOW, SEARCH_HIGH, d),
        objective=fn,
        known_bias=float(bias),
        vectorized=True,
    )


def make_catalog_problem(tag: str, d: int, seed) -> Problem:
    """Instance of a catalog tag such as ``"cec2014-f8"``."""
    try:
        entry = CATALOG[tag]
    except KeyError:
        raise ConfigurationError(f"unknown problem tag {tag!r}") from None
    return make_benchmark(entry.base, d, seed, entry.bias, entry.rotated, name=tag)
