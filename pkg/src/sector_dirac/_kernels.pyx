# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: modified Bessel K by double-exponential quadrature and
banded LDL^T inertia counting."""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, log, cosh, asinh, fabs, sqrt

cnp.import_array()

cdef double _LOG_DBL_MAX = 709.782712893384
cdef double _CUT = 50.0


cdef inline double _phi(double t, double nu, double r) nogil:
    return -r * cosh(t) + nu * t


cdef double _edge(double nu, double r, double tstar, double phistar,
                  double direction) nogil:
    """Point beyond which the scaled log-integrand drops below -_CUT."""
    cdef double step = 1.0, lo = tstar, hi
    cdef int it
    hi = tstar + direction * step
    while True:
        if direction < 0 and hi <= 0.0:
            return 0.0
        if _phi(hi, nu, r) - phistar < -_CUT:
            break
        lo = hi
        step *= 2.0
        hi = tstar + direction * step
    for it in range(80):
        mid = 0.5 * (lo + hi)
        if _phi(mid, nu, r) - phistar < -_CUT:
            hi = mid
        else:
            lo = mid
    return hi


cdef inline double _scaled(double t, double nu, double r, double phistar) nogil:
    return exp(_phi(t, nu, r) - phistar) * 0.5 * (1.0 + exp(-2.0 * nu * t))


cdef int _log_bessel_k(double nu, double r, double* out) nogil:
    """log K_nu(r) for nu >= 0, r > 0. Returns number of halvings used, -1 if
    the trapezoid sequence did not settle."""
    cdef double tstar = asinh(nu / r)
    cdef double phistar = _phi(tstar, nu, r)
    cdef double a = 0.0
    cdef double b = _edge(nu, r, tstar, phistar, 1.0)
    cdef int symmetric = 1
    cdef double lo
    if tstar > 0.0:
        lo = _edge(nu, r, tstar, phistar, -1.0)
        if lo > 0.0:
            a = lo
            symmetric = 0
    cdef int n = 16, level, k
    cdef double h = (b - a) / n
    cdef double total = 0.0, prev, estimate, new_sum
    if symmetric:
        total = 0.5 * _scaled(a, nu, r, phistar)
    for k in range(1, n + 1):
        total += _scaled(a + k * h, nu, r, phistar)
    estimate = total * h
    for level in range(1, 16):
        prev = estimate
        new_sum = 0.0
        for k in range(n):
            new_sum += _scaled(a + (k + 0.5) * h, nu, r, phistar)
        total += new_sum
        n *= 2
        h *= 0.5
        estimate = total * h
        if level >= 2 and fabs(estimate - prev) <= 1e-14 * estimate:
            out[0] = phistar + log(estimate)
            return level
    out[0] = phistar + log(estimate)
    return -1


def log_bessel_k(double nu, double[::1] r):
    """Vectorised log K_|nu|(r) over a contiguous float64 array of radii."""
    cdef Py_ssize_t i, m = r.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] res = np.empty(m)
    cdef double[::1] rv = res
    cdef double anu = fabs(nu)
    cdef double value
    cdef int status
    for i in range(m):
        if r[i] <= 0.0:
            raise ValueError("bessel_k requires r > 0")
        with nogil:
            status = _log_bessel_k(anu, r[i], &value)
        if status < 0:
            raise ArithmeticError(f"quadrature did not settle for nu={nu}, r={r[i]}")
        rv[i] = value
    return res


def banded_negative_count(double[:, ::1] ab, double shift):
    """Inertia count of LDL^T(A - shift*I) for a symmetric band matrix held
    in lower storage ab[d, j] = A[j + d, j].

    Returns (negative pivots, weak pivots), a pivot being weak when it is
    below 1e-10 of the summed magnitudes that cancelled to produce it
    (shifted diagonal plus every elimination update); weak pivots make the
    count unreliable.
    """
    cdef Py_ssize_t bw = ab.shape[0] - 1, n = ab.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] work_arr = np.array(ab, dtype=np.float64, copy=True)
    cdef double[:, ::1] w = work_arr
    cdef cnp.ndarray[cnp.float64_t, ndim=1] l_arr = np.empty(bw + 1)
    cdef double[::1] l = l_arr
    cdef Py_ssize_t j, p, q, top
    cdef cnp.ndarray[cnp.float64_t, ndim=1] acc_arr = np.zeros(n)
    cdef double[::1] acc = acc_arr
    cdef double d, tiny
    cdef long count = 0, weak = 0
    for j in range(n):
        w[0, j] -= shift
        acc[j] = fabs(w[0, j])
    with nogil:
        for j in range(n):
            d = w[0, j]
            tiny = acc[j] * 1e-15
            if tiny < 1e-300:
                tiny = 1e-300
            if fabs(d) <= acc[j] * 1e-10:
                weak += 1
            if fabs(d) < tiny:
                d = -tiny if d < 0 else tiny
            if d < 0:
                count += 1
            top = bw if j + bw < n else n - 1 - j
            for p in range(1, top + 1):
                l[p] = w[p, j] / d
                acc[j + p] += fabs(d * l[p] * l[p])
            for q in range(1, top + 1):
                for p in range(q, top + 1):
                    w[p - q, j + q] -= d * l[p] * l[q]
    return count, weak
