# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: benchmark base functions and the gear-train grid scan.

Function ids follow ``_pykernels.BASE_FUNCTIONS``.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, sqrt, exp, fabs, fmod, pow, nearbyint, round as cround, M_PI, M_E

cnp.import_array()

cdef double SCHWEFEL_K = 418.9828872724338


cdef double _elliptic(const double* z, Py_ssize_t d) noexcept nogil:
    cdef double s = 0.0, w = 1.0, step
    cdef Py_ssize_t i
    if d == 1:
        return z[0] * z[0]
    step = pow(10.0, 6.0 / (d - 1))
    for i in range(d):
        s += w * z[i] * z[i]
        w *= step
    return s


cdef double _bent_cigar(const double* z, Py_ssize_t d) noexcept nogil:
    cdef double s = 0.0
    cdef Py_ssize_t i
    for i in range(1, d):
        s += z[i] * z[i]
    return z[0] * z[0] + 1e6 * s


cdef double _discus(const double* z, Py_ssize_t d) noexcept nogil:
    cdef double s = 0.0
    cdef Py_ssize_t i
    for i in range(1, d):
        s += z[i] * z[i]
    return 1e6 * z[0] * z[0] + s


cdef double _rosenbrock(const double* z, Py_ssize_t d) noexcept nogil:
    cdef double s = 0.0, t
    cdef Py_ssize_t i
    for i in range(d - 1):
        t = z[i] * z[i] - z[i + 1]
        s += 100.0 * t * t + (z[i] - 1.0) * (z[i] - 1.0)
    return s


cdef double _ackley(const double* z, Py_ssize_t d) noexcept nogil:
    cdef double s1 = 0.0, s2 = 0.0
    cdef Py_ssize_t i
    for i in range(d):
        s1 += z[i] * z[i]
        s2 += cos(2.0 * M_PI * z[i])
    return -20.0 * exp(-0.2 * sqrt(s1 / d)) - exp(s2 / d) + 20.0 + M_E


cdef double _weierstrass(const double* z, Py_ssize_t d) noexcept nogil:
    # b = 3, so cos(2*pi*3^k*y) follows from the triple-angle identity
    # cos(3t) = 4cos(t)^3 - 3cos(t); one libm cos per coordinate
    cdef double s = 0.0, ak, c
    cdef Py_ssize_t i, k
    for i in range(d):
        c = cos(2.0 * M_PI * (z[i] + 0.5))
        ak = 1.0
        s += c
        for k in range(1, 21):
            c = c * (4.0 * c * c - 3.0)
            ak *= 0.5
            s += ak * c
    # 3^k is odd, so sum_k 0.5^k cos(pi 3^k) = -(2 - 0.5^20)
    return s + d * (2.0 - pow(0.5, 20))


cdef double _griewank(const double* z, Py_ssize_t d) noexcept nogil:
    cdef double s = 0.0, p = 1.0
    cdef Py_ssize_t i
    for i in range(d):
        s += z[i] * z[i]
        p *= cos(z[i] / sqrt(i + 1.0))
    return s / 4000.0 - p + 1.0


cdef double _rastrigin(const double* z, Py_ssize_t d) noexcept nogil:
    cdef double s = 0.0
    cdef Py_ssize_t i
    for i in range(d):
        s += z[i] * z[i] - 10.0 * cos(2.0 * M_PI * z[i]) + 10.0
    return s


cdef double _schwefel(const double* z, Py_ssize_t d) noexcept nogil:
    cdef double s = 0.0, zi, m
    cdef Py_ssize_t i
    for i in range(d):
        zi = z[i]
        if zi > 500.0:
            m = 500.0 - fmod(zi, 500.0)
            s += m * sin(sqrt(fabs(m))) - (zi - 500.0) * (zi - 500.0) / (10000.0 * d)
        elif zi < -500.0:
            m = fmod(fabs(zi), 500.0) - 500.0
            s += m * sin(sqrt(fabs(m))) - (zi + 500.0) * (zi + 500.0) / (10000.0 * d)
        else:
            s += zi * sin(sqrt(fabs(zi)))
    return SCHWEFEL_K * d - s


cdef double _katsuura(const double* z, Py_ssize_t d) noexcept nogil:
    cdef double prod = 1.0, s, t, p2
    cdef double expo = 10.0 / pow(<double>d, 1.2)
    cdef double c = 10.0 / (<double>d * d)
    cdef Py_ssize_t i, j
    for i in range(d):
        s = 0.0
        p2 = 1.0
        for j in range(32):
            p2 *= 2.0
            t = p2 * z[i]
            s += fabs(t - cround(t)) / p2
        prod *= pow(1.0 + (i + 1) * s, expo)
    return c * prod - c


cdef double _happycat(const double* z, Py_ssize_t d) noexcept nogil:
    cdef double r2 = 0.0, s = 0.0
    cdef Py_ssize_t i
    for i in range(d):
        r2 += z[i] * z[i]
        s += z[i]
    return pow(fabs(r2 - d), 0.25) + (0.5 * r2 + s) / d + 0.5


cdef double _hgbat(const double* z, Py_ssize_t d) noexcept nogil:
    cdef double r2 = 0.0, s = 0.0
    cdef Py_ssize_t i
    for i in range(d):
        r2 += z[i] * z[i]
        s += z[i]
    return sqrt(fabs(r2 * r2 - s * s)) + (0.5 * r2 + s) / d + 0.5


cdef double _expanded_griewank_rosenbrock(const double* z, Py_ssize_t d) noexcept nogil:
    cdef double s = 0.0, a, b, r
    cdef Py_ssize_t i
    for i in range(d):
        a = z[i]
        b = z[(i + 1) % d]
        r = 100.0 * (a * a - b) * (a * a - b) + (a - 1.0) * (a - 1.0)
        s += r * r / 4000.0 - cos(r) + 1.0
    return s


cdef double _expanded_schaffer_f6(const double* z, Py_ssize_t d) noexcept nogil:
    cdef double s = 0.0, r2, sn, den
    cdef Py_ssize_t i
    for i in range(d):
        r2 = z[i] * z[i] + z[(i + 1) % d] * z[(i + 1) % d]
        sn = sin(sqrt(r2))
        den = 1.0 + 0.001 * r2
        s += 0.5 + (sn * sn - 0.5) / (den * den)
    return s


cdef double _zakharov(const double* z, Py_ssize_t d) noexcept nogil:
    cdef double s1 = 0.0, s2 = 0.0
    cdef Py_ssize_t i
    for i in range(d):
        s1 += z[i] * z[i]
        s2 += 0.5 * (i + 1) * z[i]
    return s1 + s2 * s2 + s2 * s2 * s2 * s2


cdef double _levy(const double* z, Py_ssize_t d) noexcept nogil:
    cdef double w, s, t
    cdef Py_ssize_t i
    w = 1.0 + (z[0] - 1.0) / 4.0
    t = sin(M_PI * w)
    s = t * t
    for i in range(d - 1):
        w = 1.0 + (z[i] - 1.0) / 4.0
        t = sin(M_PI * w + 1.0)
        s += (w - 1.0) * (w - 1.0) * (1.0 + 10.0 * t * t)
    w = 1.0 + (z[d - 1] - 1.0) / 4.0
    t = sin(2.0 * M_PI * w)
    s += (w - 1.0) * (w - 1.0) * (1.0 + t * t)
    return s


cdef double _rastrigin_noncontinuous(const double* z, Py_ssize_t d) noexcept nogil:
    cdef double s = 0.0, y
    cdef Py_ssize_t i
    for i in range(d):
        y = z[i]
        if fabs(y) > 0.5:
            # half-to-even to agree with numpy.round
            y = nearbyint(2.0 * y) / 2.0
        s += y * y - 10.0 * cos(2.0 * M_PI * y) + 10.0
    return s


ctypedef double (*base_fn)(const double*, Py_ssize_t) noexcept nogil

cdef base_fn _lookup(int fid) except NULL:
    if fid == 0: return _elliptic
    if fid == 1: return _bent_cigar
    if fid == 2: return _discus
    if fid == 3: return _rosenbrock
    if fid == 4: return _ackley
    if fid == 5: return _weierstrass
    if fid == 6: return _griewank
    if fid == 7: return _rastrigin
    if fid == 8: return _schwefel
    if fid == 9: return _katsuura
    if fid == 10: return _happycat
    if fid == 11: return _hgbat
    if fid == 12: return _expanded_griewank_rosenbrock
    if fid == 13: return _expanded_schaffer_f6
    if fid == 14: return _zakharov
    if fid == 15: return _levy
    if fid == 16: return _rastrigin_noncontinuous
    raise ValueError(f"unknown base function id {fid}")


def base_batch(int fid, Z):
    """Evaluate base function ``fid`` on each row of ``Z`` (shape ``(n, D)``)."""
    cdef double[:, ::1] z = np.ascontiguousarray(Z, dtype=np.float64)
    cdef Py_ssize_t n = z.shape[0], d = z.shape[1], r
    out = np.empty(n)
    cdef double[::1] o = out
    cdef base_fn fn = _lookup(fid)
    with nogil:
        for r in range(n):
            o[r] = fn(&z[r, 0], d)
    return out


def shifted_rotated_batch(int fid, X, shift, rotation, double scale, offset):
    """``base(scale * M (x - o) + offset)`` for every row ``x`` of ``X``.

    Rows are transformed one at a time so a point scores the same alone or
    inside a batch.
    """
    cdef double[:, ::1] x = np.ascontiguousarray(X, dtype=np.float64)
    cdef double[::1] sh = np.ascontiguousarray(shift, dtype=np.float64)
    cdef double[::1] off = np.ascontiguousarray(offset, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0], d = x.shape[1], r, i, j
    cdef bint rotate = rotation is not None
    cdef double[:, ::1] m
    if rotate:
        m = np.ascontiguousarray(rotation, dtype=np.float64)
    buf_y = np.empty(d)
    buf_z = np.empty(d)
    cdef double[::1] y = buf_y
    cdef double[::1] zz = buf_z
    cdef double acc
    out = np.empty(n)
    cdef double[::1] o = out
    cdef base_fn fn = _lookup(fid)
    with nogil:
        for r in range(n):
            for i in range(d):
                y[i] = x[r, i] - sh[i]
            if rotate:
                for i in range(d):
                    acc = 0.0
                    for j in range(d):
                        acc = acc + m[i, j] * y[j]
                    zz[i] = scale * acc + off[i]
            else:
                for i in range(d):
                    zz[i] = scale * y[i] + off[i]
            o[r] = fn(&zz[0], d)
    return out


def gtd_grid_minimum(int lo, int hi, double target):
    """Exhaustive minimum of ``(target - (b*c)/(a*d))**2`` over the integer grid.

    Returns ``(value, (a, b, c, d))``; ties keep the first point in
    ``(a, d, b, c)`` scan order.
    """
    cdef int a, b, c, d
    cdef int ba = 0, bb = 0, bc = 0, bd = 0
    cdef double best = float("inf"), err, den
    with nogil:
        for a in range(lo, hi + 1):
            for d in range(lo, hi + 1):
                den = <double>(a * d)
                for b in range(lo, hi + 1):
                    for c in range(lo, hi + 1):
                        err = target - <double>(b * c) / den
                        err = err * err
                        if err < best:
                            best = err
                            ba = a; bb = b; bc = c; bd = d
    return best, (ba, bb, bc, bd)
