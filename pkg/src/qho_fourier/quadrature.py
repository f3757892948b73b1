"""Adaptive panel quadrature on finite intervals and on the half-line.

Panels carry a fixed-order Gauss-Legendre rule; the error of a panel is
the difference between the rule on the whole panel and on its two halves.
All panels of a refinement sweep are evaluated with one vectorized call of
the integrand, so integrands must accept numpy arrays.
"""
from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, SingularityTooStrong, TailNotDecayed

_ORDER = 10
_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(_ORDER)
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureConfig:
    """Truncation and accuracy settings for integrals over [0, inf)."""

    truncation_radius: float = 12.0
    rel_tol: float = 1e-9
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not self.truncation_radius > 0:
            raise ValueError("truncation_radius must be positive")
        if not 0 < self.rel_tol < 1:
            raise ValueError("rel_tol must lie in (0, 1)")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be positive")

    def replace(self, **changes):
        fields = dict(
            truncation_radius=self.truncation_radius,
            rel_tol=self.rel_tol,
            max_subdivisions=self.max_subdivisions,
        )
        fields.update(changes)
        return QuadratureConfig(**fields)


def _rule(g, a, b):
    """Gauss-Legendre sums over the panels [a, b] and their halves.

    Returns (fine value, error estimate, fine integral of |g|) per panel.
    """
    half = 0.5 * (b - a)
    mid = a + half
    q = 0.5 * half
    centers = np.stack([mid, a + q, mid + q], axis=1)  # whole, left, right
    scales = np.stack([half, q, q], axis=1)
    x = centers[..., None] + scales[..., None] * _NODES
    with np.errstate(over="ignore", invalid="ignore"):
        y = np.asarray(g(x), dtype=float)
    if y.shape != x.shape:
        y = np.broadcast_to(y, x.shape)
    s = (y * _WEIGHTS).sum(axis=-1) * scales
    sa = (np.abs(y) * _WEIGHTS).sum(axis=-1) * scales
    fine = s[:, 1] + s[:, 2]
    return fine, np.abs(fine - s[:, 0]), sa[:, 1] + sa[:, 2]


def integrate_panels(g, edges, rel_tol, max_subdivisions, abs_tol=0.0, origin_power=None):
    """Integrate ``g`` over the union of panels given by sorted ``edges``.

    Panels are bisected until the summed error estimate is below
    ``max(rel_tol * max(|I|, int|g|), abs_tol)``; error contributions at
    the round-off floor of a panel are not refined further.

    ``origin_power`` is the exponent of an integrable power-law singularity
    at the left end. Halving cannot remove such an error geometrically, so
    the estimate on the first panel is inflated to the extrapolated error.

    Returns
    -------
    value, l1, err : float
        Integral, integral of ``|g|`` and the remaining error estimate.
    """
    edges = np.asarray(edges, dtype=float)
    a, b = edges[:-1], edges[1:]
    left = edges[0]
    inflate = 1.0
    if origin_power is not None and origin_power < 0:
        r = 2.0 ** -(origin_power + 1.0)
        inflate = r / (1.0 - r)
    val, err, l1 = _rule(g, a, b)
    if not (np.all(np.isfinite(val)) and np.all(np.isfinite(err))):
        raise NoConvergence("integrand is not finite on the integration range")
    while True:
        total = val.sum()
        scale = max(abs(total), l1.sum())
        tol = max(rel_tol * scale, abs_tol)
        live = np.where(err > 64 * _EPS * l1, err, 0.0)
        if inflate != 1.0:
            live = np.where(a == left, live * inflate, live)
        if live.sum() <= tol:
            return float(total), float(l1.sum()), float(live.sum())
        bad = live > tol / len(a)
        if not bad.any():
            bad = live == live.max()
        if len(a) + bad.sum() > max_subdivisions:
            raise NoConvergence(
                f"quadrature needs more than {max_subdivisions} panels "
                f"(error {live.sum():.3g} > {tol:.3g})"
            )
        ba, bb = a[bad], b[bad]
        bm = 0.5 * (ba + bb)
        na = np.concatenate([ba, bm])
        nb = np.concatenate([bm, bb])
        nv, ne, nl = _rule(g, na, nb)
        if not (np.all(np.isfinite(nv)) and np.all(np.isfinite(ne))):
            raise NoConvergence("integrand is not finite on the integration range")
        keep = ~bad
        a = np.concatenate([a[keep], na])
        b = np.concatenate([b[keep], nb])
        val = np.concatenate([val[keep], nv])
        err = np.concatenate([err[keep], ne])
        l1 = np.concatenate([l1[keep], nl])


def local_power(g, x1, x2):
    """Exponent p of a power law |g| ~ x**p estimated from two points.

    Returns -inf when ``g`` is not finite at ``x1`` and ``None`` when a
    sample is zero (no power-law behaviour to speak of).
    """
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        y1 = abs(float(np.asarray(g(np.array([x1])), dtype=float)[0]))
        y2 = abs(float(np.asarray(g(np.array([x2])), dtype=float)[0]))
    if not np.isfinite(y1) or not np.isfinite(y2):
        return -np.inf
    if y1 == 0.0 or y2 == 0.0:
        return None
    return float(np.log(y1 / y2) / np.log(x1 / x2))


def check_origin(g, radius):
    """Reject integrands whose singularity at 0 is not integrable.

    Returns the estimated exponent when ``g`` looks singular at the origin
    (callers grade the mesh there), else None.
    """
    p = local_power(g, 1e-12 * radius, 1e-10 * radius)
    if p is None:
        return None
    if p <= -1.0 + 1e-3:
        raise SingularityTooStrong(f"integrand behaves like x**{p:.3g} at the origin")
    return p if p < -1e-6 else None


def initial_edges(radius, max_width=None, graded=False, start=0.0):
    """Panel edges on [start, radius]; widths capped by ``max_width``."""
    span = radius - start
    width = span / 8.0
    if max_width is not None:
        width = min(width, max_width)
    count = max(int(np.ceil(span / width)), 1)
    edges = np.linspace(start, radius, count + 1)
    if graded and start == 0.0:
        first = edges[1]
        grading = first * 2.0 ** -np.arange(1, 48)
        edges = np.concatenate([[0.0], grading[::-1], edges[1:]])
    return edges


def tail_fraction(g, radius, l1):
    """Integral of |g| over the last panel of [0, radius], relative to ``l1``."""
    width = min(1.0, radius / 8.0)
    # only the ratio to l1 matters, so an absolute floor far below it is enough
    _, last, _ = integrate_panels(
        lambda x: np.abs(g(x)), [radius - width, radius], 1e-6, 200, abs_tol=1e-15 * l1
    )
    if last == 0.0:
        return 0.0
    if l1 == 0.0 or not np.isfinite(last):
        return np.inf
    return last / l1


def integrate_half_line(g, cfg=None, map_tail=True):
    """Integrate ``g`` over [0, inf).

    The range [0, R] is handled by adaptive panels. If the last panel shows
    that ``g`` has not decayed at R, the remainder is added through the
    substitution x = R / t when ``map_tail`` is set; otherwise, or when the
    mapped integrand is not integrable at t = 0, ``TailNotDecayed`` is raised.
    """
    cfg = cfg or QuadratureConfig()
    radius = cfg.truncation_radius
    power = check_origin(g, radius)
    value, l1, _ = integrate_panels(
        g,
        initial_edges(radius, graded=power is not None),
        cfg.rel_tol,
        cfg.max_subdivisions,
        origin_power=power,
    )
    frac = tail_fraction(g, radius, l1)
    if frac <= cfg.rel_tol:
        return value
    if not map_tail:
        raise TailNotDecayed(
            f"integrand tail at R={radius} carries {frac:.3g} of the integral"
        )

    def mapped(t):
        with np.errstate(over="ignore", invalid="ignore"):
            return g(radius / t) * radius / (t * t)

    p = local_power(mapped, 1e-8, 1e-6)
    if p is not None and p <= -1.0 + 1e-3:
        raise TailNotDecayed(f"integrand decays too slowly beyond R={radius}")
    singular = p is not None and p < -1e-6
    tail, _, _ = integrate_panels(
        mapped,
        initial_edges(1.0, graded=singular),
        cfg.rel_tol,
        cfg.max_subdivisions,
        abs_tol=cfg.rel_tol * l1,
        origin_power=p if singular else None,
    )
    return value + tail
