# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the sequential kernels in ``_core_py``."""
import numpy as np

from libc.math cimport fabs, fmax, fmin, INFINITY

cdef double _TINY = 1e-300


cdef int _count(const double[::1] d, const double[::1] e2, double x) noexcept nogil:
    cdef Py_ssize_t i, n = d.shape[0]
    cdef int count = 0
    cdef double q = d[0] - x
    if q < 0.0:
        count += 1
    for i in range(1, n):
        if q == 0.0:
            q = _TINY
        q = (d[i] - x) - e2[i - 1] / q
        if q < 0.0:
            count += 1
    return count


def sturm_count(d, e2, double x):
    cdef double[::1] dv = np.ascontiguousarray(d, dtype=np.float64)
    cdef double[::1] ev = np.ascontiguousarray(e2, dtype=np.float64)
    return _count(dv, ev, x)


def bisect_eigenvalues(d, e, int lo, int hi, double tol, long max_iter):
    cdef double[::1] dv = np.ascontiguousarray(d, dtype=np.float64)
    cdef double[::1] ev = np.ascontiguousarray(e, dtype=np.float64)
    cdef Py_ssize_t n = dv.shape[0], i
    cdef double[::1] e2 = np.empty(max(n - 1, 0))
    for i in range(n - 1):
        e2[i] = ev[i] * ev[i]
    cdef double left = INFINITY, right = -INFINITY, r
    for i in range(n):
        r = 0.0
        if i > 0:
            r += fabs(ev[i - 1])
        if i < n - 1:
            r += fabs(ev[i])
        left = fmin(left, dv[i] - r)
        right = fmax(right, dv[i] + r)
    out = np.empty(hi - lo)
    cdef double[::1] ov = out
    cdef int j
    cdef long it, worst = 0
    cdef double a, b, mid
    for j in range(lo, hi):
        a = left
        b = right
        it = 0
        while b - a > tol * fmax(1.0, fabs(a) + fabs(b)):
            if it >= max_iter:
                return out, -1
            mid = 0.5 * (a + b)
            if _count(dv, e2, mid) > j:
                b = mid
            else:
                a = mid
            it += 1
        ov[j - lo] = 0.5 * (a + b)
        if it > worst:
            worst = it
    return out, worst


def shifted_solve(d, e, double shift, rhs):
    cdef double[::1] dv = np.ascontiguousarray(d, dtype=np.float64)
    cdef double[::1] ev = np.ascontiguousarray(e, dtype=np.float64)
    cdef Py_ssize_t n = dv.shape[0], i
    cdef double[::1] diag = np.empty(n)
    cdef double[::1] up1 = np.zeros(n)
    cdef double[::1] up2 = np.zeros(n)
    cdef double[::1] low = np.zeros(max(n - 1, 1))
    cdef double[::1] y = np.array(rhs, dtype=np.float64)
    x = np.zeros(n)
    cdef double[::1] xv = x
    cdef double piv, m, nd, s
    for i in range(n):
        diag[i] = dv[i] - shift
    for i in range(n - 1):
        up1[i] = ev[i]
        low[i] = ev[i]
    for i in range(n - 1):
        if fabs(low[i]) > fabs(diag[i]):
            nd = diag[i]
            diag[i] = low[i]
            low[i] = nd
            nd = up1[i]
            up1[i] = diag[i + 1]
            diag[i + 1] = nd
            up2[i] = up1[i + 1]
            up1[i + 1] = 0.0
            nd = y[i]
            y[i] = y[i + 1]
            y[i + 1] = nd
            piv = diag[i] if diag[i] != 0.0 else _TINY
            m = low[i] / piv
            diag[i + 1] -= m * up1[i]
            up1[i + 1] -= m * up2[i]
        else:
            piv = diag[i] if diag[i] != 0.0 else _TINY
            m = low[i] / piv
            diag[i + 1] -= m * up1[i]
        y[i + 1] -= m * y[i]
    for i in range(n - 1, -1, -1):
        piv = diag[i] if diag[i] != 0.0 else _TINY
        s = y[i]
        if i + 1 < n:
            s -= up1[i] * xv[i + 1]
        if i + 2 < n:
            s -= up2[i] * xv[i + 2]
        xv[i] = s / piv
    return x


def kummer_sum(double a1, double b1, double z, long max_terms, double rtol):
    cdef double term = 1.0, total = 1.0, num
    cdef long j
    for j in range(max_terms):
        num = a1 + j
        if num == 0.0:
            return total, j + 1, True
        term *= num * z / ((b1 + j) * (j + 1))
        total += term
        if fabs(term) < rtol * fabs(total) or term == 0.0:
            return total, j + 2, True
    return total, max_terms, False
