"""Rank-based comparison of optimizers: U-test, Holm correction, marks, ranks."""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.stats import rankdata

from .core import ConfigurationError

BETTER, SIMILAR, WORSE = "+", "≈", "-"
# exact null distribution is used below this combined size when there are no ties
EXACT_MAX_TOTAL = 50


def midranks(values) -> np.ndarray:
    """1-based ranks with ties given the average of the ranks they span."""
    return rankdata(np.asarray(values, dtype=float), method="average")


def _validate(sample, label):
    arr = np.asarray(sample, dtype=float).reshape(-1)
    if arr.size < 1:
        raise ConfigurationError(f"{label} is empty")
    if not np.all(np.isfinite(arr)):
        raise ConfigurationError(f"{label} contains non-finite values")
    return arr


@lru_cache(maxsize=None)
def _u_counts(n1: int, n2: int) -> tuple:
    """Number of rank arrangements yielding each U in ``0..n1*n2`` (no ties)."""
    # c(n1, n2, u) = c(n1 - 1, n2, u - n2) + c(n1, n2 - 1, u)
    if n1 == 0 or n2 == 0:
        return (1,)
    a = _u_counts(n1 - 1, n2)
    b = _u_counts(n1, n2 - 1)
    out = [0] * (n1 * n2 + 1)
    for u, c in enumerate(a):
        out[u + n2] += c
    for u, c in enumerate(b):
        out[u] += c
    return tuple(out)


def _exact_p(u: float, n1: int, n2: int) -> float:
    counts = _u_counts(n1, n2)
    total = sum(counts)
    k = int(round(u))
    lower = sum(counts[: k + 1])
    upper = sum(counts[k:])
    return min(1.0, 2.0 * min(lower, upper) / total)


def _asymptotic_p(u: float, n1: int, n2: int, tie_sum: float) -> float:
    n = n1 + n2
    var = n1 * n2 / 12.0 * ((n + 1) - tie_sum / (n * (n - 1)))
    if var <= 0:
        return 1.0
    z = max(abs(u - n1 * n2 / 2.0) - 0.5, 0.0) / math.sqrt(var)
    return math.erfc(z / math.sqrt(2.0))


def mann_whitney_u(a, b, method: str = "auto"):
    """Two-sided Mann-Whitney U test. Returns ``(U of a, p)``.

    ``method="asymptotic"`` uses the tie-corrected normal approximation with
    a 0.5 continuity correction. ``"exact"`` uses the exact null distribution
    (valid only without ties). ``"auto"`` picks exact when there are no ties
    and ``n1 + n2 <= 50``, asymptotic otherwise.
    """
    a = _validate(a, "first sample")
    b = _validate(b, "second sample")
    n1, n2 = a.size, b.size
    ranks = midranks(np.concatenate([a, b]))
    u = float(ranks[:n1].sum() - n1 * (n1 + 1) / 2.0)
    _, tie_counts = np.unique(np.concatenate([a, b]), return_counts=True)
    tie_sum = float((tie_counts ** 3 - tie_counts).sum())
    has_ties = tie_sum > 0

    if method == "auto":
        method = "exact" if not has_ties and n1 + n2 <= EXACT_MAX_TOTAL else "asymptotic"
    if method == "exact":
        if has_ties:
            raise ConfigurationError("exact U-test p-values need tie-free samples")
        p = _exact_p(u, n1, n2)
    elif method == "asymptotic":
        p = _asymptotic_p(u, n1, n2, tie_sum)
    else:
        raise ConfigurationError(f"unknown U-test method {method!r}")
    return u, min(max(p, np.finfo(float).tiny), 1.0)


def holm_adjust(p) -> np.ndarray:
    """Holm step-down adjusted p-values, returned in input order."""
    p = np.asarray(p, dtype=float).reshape(-1)
    m = p.size
    if m == 0:
        return p.copy()
    order = np.argsort(p, kind="mergesort")
    scaled = p[order] * (m - np.arange(m))
    adjusted = np.minimum(np.maximum.accumulate(scaled), 1.0)
    out = np.empty(m)
    out[order] = adjusted
    return out


def significance_mark(reference, other, adjusted_p: float, alpha: float = 0.05) -> str:
    """``+`` when the reference is significantly better (lower), ``-`` when worse."""
    if adjusted_p >= alpha:
        return SIMILAR
    ref_med = float(np.median(reference))
    other_med = float(np.median(other))
    if other_med > ref_med:
        return BETTER
    if other_med < ref_med:
        return WORSE
    return SIMILAR


def average_ranks(means) -> np.ndarray:
    """Mean over problems of each algorithm's midrank; ``means`` is ``(A, P)``."""
    means = np.asarray(means, dtype=float)
    if means.ndim != 2:
        raise ConfigurationError("means must be an (algorithms, problems) array")
    per_problem = np.column_stack([midranks(means[:, j]) for j in range(means.shape[1])])
    return per_problem.mean(axis=1)
