"""Pure numpy implementations of the hot kernels.

Mirrors ``_ckernels.pyx`` function for function; selected automatically when
the compiled module is missing or ``ZSOPT_PURE_PYTHON`` is set.
"""
import numpy as np

# Index order is shared with the compiled kernels; append only.
BASE_FUNCTIONS = (
    "elliptic",
    "bent-cigar",
    "discus",
    "rosenbrock",
    "ackley",
    "weierstrass",
    "griewank",
    "rastrigin",
    "schwefel",
    "katsuura",
    "happycat",
    "hgbat",
    "expanded-griewank-rosenbrock",
    "expanded-schaffer-f6",
    "zakharov",
    "levy",
    "rastrigin-noncontinuous",
)

_SCHWEFEL_K = 418.9828872724338
_SCHWEFEL_OFFSET = 420.9687462275036


def _elliptic(z):
    d = z.shape[1]
    if d == 1:
        return z[:, 0] ** 2
    w = 10.0 ** (6.0 * np.arange(d) / (d - 1))
    return (w * z * z).sum(axis=1)


def _bent_cigar(z):
    return z[:, 0] ** 2 + 1e6 * (z[:, 1:] ** 2).sum(axis=1)


def _discus(z):
    return 1e6 * z[:, 0] ** 2 + (z[:, 1:] ** 2).sum(axis=1)


def _rosenbrock(z):
    a, b = z[:, :-1], z[:, 1:]
    return (100.0 * (a * a - b) ** 2 + (a - 1.0) ** 2).sum(axis=1)


def _ackley(z):
    d = z.shape[1]
    s1 = (z * z).sum(axis=1) / d
    s2 = np.cos(2.0 * np.pi * z).sum(axis=1) / d
    return -20.0 * np.exp(-0.2 * np.sqrt(s1)) - np.exp(s2) + 20.0 + np.e


def _weierstrass(z):
    # b = 3: cos(2*pi*3^k*y) via the triple-angle identity cos(3t) = c(4c^2 - 3),
    # summed coordinate-wise in the same order as the compiled kernel
    c = np.cos(2.0 * np.pi * (z + 0.5))
    s = c.copy()
    ak = 1.0
    for _ in range(20):
        c = c * (4.0 * c * c - 3.0)
        ak *= 0.5
        s += ak * c
    # 3^k is odd, so sum_k 0.5^k cos(pi 3^k) = -(2 - 0.5^20)
    return s.sum(axis=1) + z.shape[1] * (2.0 - 0.5 ** 20)


def _griewank(z):
    i = np.arange(1, z.shape[1] + 1)
    return (z * z).sum(axis=1) / 4000.0 - np.cos(z / np.sqrt(i)).prod(axis=1) + 1.0


def _rastrigin(z):
    return (z * z - 10.0 * np.cos(2.0 * np.pi * z) + 10.0).sum(axis=1)


def _schwefel(z):
    d = z.shape[1]
    az = np.abs(z)
    inside = z * np.sin(np.sqrt(az))
    m_hi = 500.0 - np.fmod(z, 500.0)
    hi = m_hi * np.sin(np.sqrt(np.abs(m_hi))) - (z - 500.0) ** 2 / (10000.0 * d)
    m_lo = np.fmod(az, 500.0) - 500.0
    lo = m_lo * np.sin(np.sqrt(np.abs(m_lo))) - (z + 500.0) ** 2 / (10000.0 * d)
    g = np.where(z > 500.0, hi, np.where(z < -500.0, lo, inside))
    return _SCHWEFEL_K * d - g.sum(axis=1)


def _katsuura(z):
    d = z.shape[1]
    p2 = 2.0 ** np.arange(1, 33)
    t = z[:, :, None] * p2
    s = (np.abs(t - np.round(t)) / p2).sum(axis=2)
    i = np.arange(1, d + 1)
    prod = ((1.0 + i * s) ** (10.0 / d ** 1.2)).prod(axis=1)
    c = 10.0 / (d * d)
    return c * prod - c


def _happycat(z):
    d = z.shape[1]
    r2 = (z * z).sum(axis=1)
    s = z.sum(axis=1)
    return np.abs(r2 - d) ** 0.25 + (0.5 * r2 + s) / d + 0.5


def _hgbat(z):
    d = z.shape[1]
    r2 = (z * z).sum(axis=1)
    s = z.sum(axis=1)
    return np.abs(r2 * r2 - s * s) ** 0.5 + (0.5 * r2 + s) / d + 0.5


def _expanded_griewank_rosenbrock(z):
    a, b = z, np.roll(z, -1, axis=1)
    r = 100.0 * (a * a - b) ** 2 + (a - 1.0) ** 2
    return (r * r / 4000.0 - np.cos(r) + 1.0).sum(axis=1)


def _expanded_schaffer_f6(z):
    r2 = z * z + np.roll(z, -1, axis=1) ** 2
    return (0.5 + (np.sin(np.sqrt(r2)) ** 2 - 0.5) / (1.0 + 0.001 * r2) ** 2).sum(axis=1)


def _zakharov(z):
    i = np.arange(1, z.shape[1] + 1)
    s = (0.5 * i * z).sum(axis=1)
    return (z * z).sum(axis=1) + s ** 2 + s ** 4


def _levy(z):
    w = 1.0 + (z - 1.0) / 4.0
    head = np.sin(np.pi * w[:, 0]) ** 2
    wi = w[:, :-1]
    mid = ((wi - 1.0) ** 2 * (1.0 + 10.0 * np.sin(np.pi * wi + 1.0) ** 2)).sum(axis=1)
    wd = w[:, -1]
    tail = (wd - 1.0) ** 2 * (1.0 + np.sin(2.0 * np.pi * wd) ** 2)
    return head + mid + tail


def _rastrigin_noncontinuous(z):
    y = np.where(np.abs(z) > 0.5, np.round(2.0 * z) / 2.0, z)
    return _rastrigin(y)


_TABLE = (
    _elliptic, _bent_cigar, _discus, _rosenbrock, _ackley, _weierstrass,
    _griewank, _rastrigin, _schwefel, _katsuura, _happycat, _hgbat,
    _expanded_griewank_rosenbrock, _expanded_schaffer_f6, _zakharov, _levy,
    _rastrigin_noncontinuous,
)


def base_batch(fid, Z):
    """Evaluate base function ``fid`` on each row of ``Z`` (shape ``(n, D)``)."""
    Z = np.ascontiguousarray(Z, dtype=float)
    return _TABLE[fid](Z)


def shifted_rotated_batch(fid, X, shift, rotation, scale, offset):
    """``base(scale * M (x - o) + offset)`` for every row ``x`` of ``X``.

    ``rotation`` may be ``None`` for an identity rotation.
    """
    Y = np.asarray(X, dtype=float) - shift
    if rotation is not None:
        # stacked (1, D) products keep each row independent of the batch size
        Y = np.matmul(Y[:, None, :], rotation.T)[:, 0, :]
    return base_batch(fid, scale * Y + offset)


def gtd_grid_minimum(lo, hi, target):
    """Exhaustive minimum of ``(target - (b*c)/(a*d))**2`` over the integer grid.

    Returns ``(value, (a, b, c, d))``; ties keep the lexicographically first point.
    """
    v = np.arange(lo, hi + 1, dtype=np.int64)
    n = v.size
    # pairs (a, d) index the denominator, (b, c) the numerator
    den = (v[:, None] * v[None, :]).reshape(-1).astype(float)
    num = (v[:, None] * v[None, :]).reshape(-1).astype(float)
    best = np.inf
    arg = None
    for ia in range(n):
        # rows: d, cols: (b, c)
        ratio = num[None, :] / den[ia * n:(ia + 1) * n, None]
        err = (target - ratio) ** 2
        k = int(np.argmin(err))
        val = float(err.flat[k])
        if val < best:
            best = val
            ida, ibc = divmod(k, n * n)
            ib, ic = divmod(ibc, n)
            arg = (int(v[ia]), int(v[ib]), int(v[ic]), int(v[ida]))
    return best, arg
