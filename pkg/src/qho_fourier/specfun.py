"""Special functions: gamma, Kummer's function, Hermite and Laguerre polynomials.

Everything here works on real arguments only.
"""
import math
from dataclasses import dataclass

import numpy as np

from ._backend import core
from .errors import DomainError, NoConvergence, PoleError

# Lanczos coefficients, g = 7, n = 9
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _is_nonpositive_integer(z):
    return z <= 0 and z == math.floor(z)


def _sinpi(x):
    # reduce first so sin(pi*x) keeps its relative accuracy near integers
    r = math.fmod(x, 2.0)
    if r > 1.0:
        r -= 2.0
    elif r < -1.0:
        r += 2.0
    if r > 0.5:
        r = 1.0 - r
    elif r < -0.5:
        r = -1.0 - r
    return math.sin(math.pi * r)


def _gamma_positive(z):
    z -= 1.0
    s = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        s += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    # split the power to avoid overflow before the exponential damps it
    p = t ** (0.5 * (z + 0.5))
    return math.sqrt(2.0 * math.pi) * p * (p * math.exp(-t)) * s


def gamma(z):
    """Gamma function of a real argument.

    Lanczos approximation for ``z >= 0.5`` and the reflection formula below.

    Raises
    ------
    PoleError
        If ``z`` is zero or a negative integer.
    """
    z = float(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"gamma has a pole at {z!r}")
    if z < 0.5:
        return math.pi / (_sinpi(z) * _gamma_positive(1.0 - z))
    return _gamma_positive(z)


def rgamma(z):
    """Reciprocal gamma, exactly zero at the poles."""
    z = float(z)
    if _is_nonpositive_integer(z):
        return 0.0
    return 1.0 / gamma(z)


@dataclass(frozen=True)
class KummerParams:
    a1: float
    b1: float
    z: float

    def __post_init__(self):
        if _is_nonpositive_integer(self.b1):
            raise DomainError(f"b1 must not be zero or a negative integer, got {self.b1}")


def kummer_series(p, max_terms=500, rtol=1e-15):
    """Sum the power series of Kummer's function M(a1, b1, z).

    Terminates exactly when ``a1`` is a non-positive integer. Otherwise
    terms are added until one falls below ``rtol`` times the partial sum.

    Raises
    ------
    NoConvergence
        If ``max_terms`` terms do not meet the stopping rule.
    """
    if max_terms < 1:
        raise ValueError("max_terms must be positive")
    value, _, ok = core.kummer_sum(float(p.a1), float(p.b1), float(p.z), int(max_terms), rtol)
    if not ok:
        raise NoConvergence(
            f"Kummer series for {p} did not converge in {max_terms} terms"
        )
    return value


def kummer_asymptotic(p):
    """Two-term large-argument form of M(a1, b1, z) on the positive real axis.

    Returns the real part of

        Gamma(b1) [exp(i pi a1) z**-a1 / Gamma(b1 - a1) + exp(z) z**(a1 - b1) / Gamma(a1)]

    where each reciprocal gamma is taken as zero at its poles.
    """
    a1, b1, z = float(p.a1), float(p.b1), float(p.z)
    if z <= 0:
        raise DomainError(f"asymptotic form evaluated only for z > 0, got {z}")
    algebraic = math.cos(math.pi * a1) * z ** (-a1) * rgamma(b1 - a1)
    ra = rgamma(a1)
    exponential = math.exp(z) * z ** (a1 - b1) * ra if ra != 0.0 else 0.0
    return gamma(b1) * (algebraic + exponential)


def hermite(n, x):
    """Physicists' Hermite polynomial H_n(x) by the three-term recurrence.

    ``x`` may be a scalar or an array.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h = 2.0 * x
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h if h.ndim else float(h)


def laguerre(n, alpha, x):
    """Generalized Laguerre polynomial L_n^(alpha)(x) for x >= 0."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("Laguerre polynomials are evaluated on x >= 0 only")
    l_prev = np.ones_like(x)
    if n == 0:
        return l_prev if l_prev.ndim else float(l_prev)
    l = 1.0 + alpha - x
    for k in range(1, n):
        l_prev, l = l, ((2 * k + 1 + alpha - x) * l - (k + alpha) * l_prev) / (k + 1)
    return l if l.ndim else float(l)


def proportionality_constant(numerator, denominator, x, floor=1e-12):
    """Ratio numerator/denominator at the first x where the denominator is not negligible.

    Used to measure the constants linking Kummer, Laguerre and Hermite
    polynomials rather than hard-coding them.
    """
    num = np.asarray(numerator(np.asarray(x, dtype=float)), dtype=float)
    den = np.asarray(denominator(np.asarray(x, dtype=float)), dtype=float)
    idx = np.flatnonzero(np.abs(den) > floor)
    if idx.size == 0:
        raise ValueError("denominator vanishes on the whole grid")
    i = idx[0]
    return num[i] / den[i]
