"""Pure-Python implementations of the sequential kernels.

Mirrors ``_core.pyx`` function by function; used when the compiled
extension is missing or ``QHO_FOURIER_PURE_PYTHON`` is set.
"""
import math

import numpy as np

_TINY = 1e-300


def sturm_count(d, e2, x):
    """Number of eigenvalues of the symmetric tridiagonal matrix below ``x``.

    ``d`` is the diagonal, ``e2`` the squared off-diagonal (length n - 1).
    """
    n = len(d)
    count = 0
    q = d[0] - x
    if q < 0.0:
        count += 1
    for i in range(1, n):
        if q == 0.0:
            q = _TINY
        q = (d[i] - x) - e2[i - 1] / q
        if q < 0.0:
            count += 1
    return count


def bisect_eigenvalues(d, e, lo, hi, tol, max_iter):
    """Eigenvalues with ascending indices ``lo <= j < hi`` by Sturm bisection.

    Returns ``(values, iterations)``; ``iterations`` is the largest number
    of halvings any eigenvalue needed, or -1 if ``max_iter`` was hit.
    """
    d = [float(v) for v in d]
    e = [float(v) for v in e]
    e2 = [v * v for v in e]
    n = len(d)
    # Gershgorin interval
    left = math.inf
    right = -math.inf
    for i in range(n):
        r = (abs(e[i - 1]) if i > 0 else 0.0) + (abs(e[i]) if i < n - 1 else 0.0)
        left = min(left, d[i] - r)
        right = max(right, d[i] + r)
    out = np.empty(hi - lo)
    worst = 0
    for j in range(lo, hi):
        a, b = left, right
        it = 0
        while b - a > tol * max(1.0, abs(a) + abs(b)):
            if it >= max_iter:
                return out, -1
            mid = 0.5 * (a + b)
            if sturm_count(d, e2, mid) > j:
                b = mid
            else:
                a = mid
            it += 1
        out[j - lo] = 0.5 * (a + b)
        worst = max(worst, it)
    return out, worst


def shifted_solve(d, e, shift, rhs):
    """Solve ``(T - shift I) y = rhs`` by LU with partial pivoting.

    ``T`` symmetric tridiagonal with diagonal ``d`` and off-diagonal ``e``.
    Zero pivots are replaced by a tiny number, as inverse iteration wants.
    """
    n = len(d)
    # rows hold (lower-band, diag, super1, super2) after elimination
    diag = [float(d[i]) - shift for i in range(n)]
    up1 = [float(e[i]) for i in range(n - 1)] + [0.0]
    up2 = [0.0] * n
    low = [float(e[i]) for i in range(n - 1)]
    y = [float(v) for v in rhs]
    for i in range(n - 1):
        if abs(low[i]) > abs(diag[i]):
            # swap rows i and i+1
            diag[i], low[i] = low[i], diag[i]
            nd = up1[i]
            up1[i] = diag[i + 1]
            diag[i + 1] = nd
            up2[i] = up1[i + 1]
            up1[i + 1] = 0.0
            y[i], y[i + 1] = y[i + 1], y[i]
            piv = diag[i] if diag[i] != 0.0 else _TINY
            m = low[i] / piv
            diag[i + 1] -= m * up1[i]
            up1[i + 1] -= m * up2[i]
        else:
            piv = diag[i] if diag[i] != 0.0 else _TINY
            m = low[i] / piv
            diag[i + 1] -= m * up1[i]
        y[i + 1] -= m * y[i]
    x = [0.0] * n
    for i in range(n - 1, -1, -1):
        piv = diag[i] if diag[i] != 0.0 else _TINY
        s = y[i]
        if i + 1 < n:
            s -= up1[i] * x[i + 1]
        if i + 2 < n:
            s -= up2[i] * x[i + 2]
        x[i] = s / piv
    return np.asarray(x)


def kummer_sum(a1, b1, z, max_terms, rtol):
    """Partial sums of the Kummer series.

    Returns ``(value, terms_used, converged)``. A non-positive integer
    ``a1`` terminates the series exactly.
    """
    term = 1.0
    total = 1.0
    for j in range(max_terms):
        num = a1 + j
        if num == 0.0:
            return total, j + 1, True
        term *= num * z / ((b1 + j) * (j + 1))
        total += term
        if abs(term) < rtol * abs(total) or term == 0.0:
            return total, j + 2, True
    return total, max_terms, False
