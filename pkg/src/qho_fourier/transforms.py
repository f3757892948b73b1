"""Fourier sine and cosine transforms on [0, inf) and checks of their identities.

Functions accept either a :class:`GridFunction` (samples, interpolated by
local cubics) or a vectorized callable. Transforms use the unitary
normalization sqrt(2/pi) in both directions, so each kind is its own
inverse.
"""
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import BoundaryViolation, GridTooCoarse, TailNotDecayed
from .quadrature import (
    QuadratureConfig,
    check_origin,
    initial_edges,
    integrate_half_line,
    integrate_panels,
    tail_fraction,
)

SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
_BC_TOL = 1e-6
PARITIES = ("odd", "even", "none")


class TransformKind(str, enum.Enum):
    SINE = "sine"
    COSINE = "cosine"

    @property
    def parity(self):
        return "odd" if self is TransformKind.SINE else "even"

    def kernel(self, x):
        return np.sin(x) if self is TransformKind.SINE else np.cos(x)


def as_kind(kind):
    return kind if isinstance(kind, TransformKind) else TransformKind(kind)


@dataclass
class GridFunction:
    """Real samples on a strictly increasing grid.

    Half-line functions (the transforms' inputs and outputs) live on
    nonnegative grids; full-line eigenfunctions reuse the type on
    symmetric grids.
    """

    grid: np.ndarray
    values: np.ndarray
    parity: str = "none"

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.grid.ndim != 1 or self.grid.shape != self.values.shape:
            raise ValueError("grid and values must be 1-d arrays of equal length")
        if self.grid.size == 0:
            raise ValueError("empty grid")
        if np.any(np.diff(self.grid) <= 0):
            raise ValueError("grid must be strictly increasing")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("values must be finite")
        if self.parity not in PARITIES:
            raise ValueError(f"parity must be one of {PARITIES}")
        if self.parity == "odd" and self.grid[0] == 0.0 and self.values[0] != 0.0:
            raise ValueError("odd function must vanish at the origin")

    def __len__(self):
        return self.grid.size

    @property
    def spacing(self):
        return float(np.max(np.diff(self.grid))) if self.grid.size > 1 else math.inf

    def __call__(self, x):
        """Local cubic (4-point Lagrange) interpolation; zero outside the grid."""
        x = np.asarray(x, dtype=float)
        g, v = self.grid, self.values
        if g.size < 4:
            out = np.interp(x, g, v, left=0.0, right=0.0)
            return out
        i = np.clip(np.searchsorted(g, x) - 2, 0, g.size - 4)
        xs = np.stack([g[i + j] for j in range(4)])
        ys = np.stack([v[i + j] for j in range(4)])
        out = np.zeros_like(x)
        for j in range(4):
            w = np.ones_like(x)
            for m in range(4):
                if m != j:
                    w = w * (x - xs[m]) / (xs[j] - xs[m])
            out = out + w * ys[j]
        inside = (x >= g[0]) & (x <= g[-1])
        return np.where(inside, out, 0.0)


def _resolve(f, cfg):
    """Callable and integration radius for a GridFunction or callable."""
    if isinstance(f, GridFunction):
        if f.grid[0] < 0:
            raise ValueError("half-line transforms need samples on a nonnegative grid")
        return f, min(cfg.truncation_radius, float(f.grid[-1]))
    return f, cfg.truncation_radius


def fd_weights(order, points):
    """One-sided finite-difference weights at 0 on the stencil 0, 1, ..., points-1.

    Returns weights for unit spacing; divide by h**order.
    """
    if points <= order:
        raise ValueError("stencil too short for the derivative order")
    j = np.arange(points, dtype=float)
    vander = np.vander(j, points, increasing=True).T  # row q holds j**q
    rhs = np.zeros(points)
    rhs[order] = math.factorial(order)
    return np.linalg.solve(vander, rhs)


def derivative_at_origin(F, order, step=0.02, extra=None):
    """d^order F / dk^order at k = 0 by a one-sided finite difference.

    The stencil uses ``order + extra`` points (``extra`` defaults to
    ``order + 2``, so the accuracy order always exceeds the derivative
    order by at least two). For a GridFunction the stencil is its own
    leading samples, which must be uniformly spaced and start at 0.
    """
    extra = order + 2 if extra is None else extra
    points = order + extra
    if isinstance(F, GridFunction):
        if len(F) < points or F.grid[0] != 0.0:
            raise GridTooCoarse(
                f"derivative of order {order} needs {points} samples starting at 0"
            )
        g = F.grid[:points]
        h = g[1] - g[0]
        if not np.allclose(np.diff(g), h, rtol=1e-9, atol=0):
            raise GridTooCoarse("finite differences at the origin need uniform spacing")
        y = F.values[:points]
    else:
        h = step
        y = np.asarray(F(h * np.arange(points)), dtype=float)
    return float(fd_weights(order, points) @ y / h**order)


def _function_scale(fn, radius):
    probe = np.linspace(0.0, radius, 257)[1:]
    with np.errstate(over="ignore", invalid="ignore"):
        return float(np.nanmax(np.abs(fn(probe))))


def check_boundary(f, kind, radius):
    """Raise BoundaryViolation unless f(0) = 0 (sine) or f'(0) = 0 (cosine)."""
    kind = as_kind(kind)
    if isinstance(f, GridFunction):
        if f.parity != "none" and f.parity != kind.parity:
            raise BoundaryViolation(
                f"{f.parity} function cannot be given a {kind.value} transform"
            )
        if f.grid[0] != 0.0 or len(f) < 5:
            return
        scale = float(np.max(np.abs(f.values)))
        h = f.grid[1]
        if kind is TransformKind.SINE:
            bad = abs(f.values[0]) > _BC_TOL * scale
            what = abs(f.values[0])
        else:
            try:
                what = abs(derivative_at_origin(f, 1, extra=4))
            except GridTooCoarse:
                return
            bad = what > max(_BC_TOL, h**4) * scale
    else:
        scale = _function_scale(f, radius)
        if kind is TransformKind.SINE:
            with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
                what = abs(float(np.asarray(f(np.array([0.0])), dtype=float)[0]))
            bad = not what <= _BC_TOL * scale
        else:
            what = abs(derivative_at_origin(f, 1, step=1e-4, extra=2))
            bad = not what <= _BC_TOL * scale
    if bad:
        cond = "f(0) = 0" if kind is TransformKind.SINE else "f'(0) = 0"
        raise BoundaryViolation(
            f"{kind.value} transform requires {cond}; found {what:.3g} (scale {scale:.3g})"
        )


def _check_tail(fn, radius, cfg):
    power = check_origin(fn, radius)
    _, l1, _ = integrate_panels(
        lambda x: np.abs(fn(x)),
        initial_edges(radius, graded=power is not None),
        cfg.rel_tol,
        cfg.max_subdivisions,
        origin_power=power,
    )
    frac = tail_fraction(fn, radius, l1)
    if frac > cfg.rel_tol:
        raise TailNotDecayed(
            f"last panel before R={radius} carries {frac:.3g} of int|f| (> {cfg.rel_tol:g})"
        )
    return power


def transform_values(fn, kind, points, radius, cfg, origin_power=None):
    """sqrt(2/pi) * int_0^radius fn(x) trig(p x) dx for each p in ``points``.

    No precondition checks; panels are capped at a quarter period.
    """
    kind = as_kind(kind)
    points = np.asarray(points, dtype=float)
    out = np.empty(points.shape)
    for i, p in enumerate(points.flat):
        if kind is TransformKind.SINE and p == 0.0:
            out.flat[i] = 0.0
            continue
        width = math.pi / (4.0 * abs(p)) if p != 0.0 else None
        edges = initial_edges(radius, max_width=width, graded=origin_power is not None)
        value, _, _ = integrate_panels(
            lambda x: fn(x) * kind.kernel(p * x),
            edges,
            cfg.rel_tol,
            cfg.max_subdivisions,
            origin_power=origin_power,
        )
        out.flat[i] = SQRT_2_OVER_PI * value
    return out


def forward_transform(f, kind, k_grid, cfg=None, enforce_boundary=True):
    """Fourier sine or cosine transform of ``f`` sampled at ``k_grid``.

    With ``enforce_boundary`` off the origin condition is not checked; the
    transform then exists but the pair is not invertible pointwise at 0
    (e.g. the sine transform of exp(-zeta)).

    Raises
    ------
    BoundaryViolation
        If ``f`` breaks the origin condition for ``kind``.
    TailNotDecayed
        If ``f`` has not decayed at the truncation radius.
    """
    cfg = cfg or QuadratureConfig()
    kind = as_kind(kind)
    fn, radius = _resolve(f, cfg)
    if enforce_boundary:
        check_boundary(f, kind, radius)
    power = _check_tail(fn, radius, cfg)
    k_grid = np.asarray(k_grid, dtype=float)
    values = transform_values(fn, kind, k_grid, radius, cfg, origin_power=power)
    if kind is TransformKind.SINE and k_grid.size and k_grid[0] != 0.0:
        parity = "odd" if k_grid[0] > 0 else "none"
    else:
        parity = kind.parity
    return GridFunction(k_grid, values, parity=parity)


def inverse_transform(F, kind, zeta_grid, cfg=None, enforce_boundary=True):
    """Inverse sine or cosine transform; the same integral with k and zeta swapped."""
    return forward_transform(F, kind, zeta_grid, cfg, enforce_boundary)


def _half_line_integral(fn, f, cfg):
    if isinstance(f, GridFunction):
        radius = min(cfg.truncation_radius, float(f.grid[-1]))
        power = check_origin(fn, radius)
        value, _, _ = integrate_panels(
            fn,
            initial_edges(radius, graded=power is not None),
            cfg.rel_tol,
            cfg.max_subdivisions,
            origin_power=power,
        )
        return value
    return integrate_half_line(fn, cfg)


def parseval_gap(f, F, cfg=None):
    """| int_0^inf f^2 dzeta - int_0^inf F^2 dk |."""
    cfg = cfg or QuadratureConfig()
    left = _half_line_integral(lambda x: f(x) ** 2, f, cfg)
    right = _half_line_integral(lambda x: F(x) ** 2, F, cfg)
    return abs(left - right)


def weighted_moment(f, order, cfg=None):
    """int_0^inf zeta**order f(zeta) dzeta."""
    cfg = cfg or QuadratureConfig()
    if order < 0:
        raise ValueError("moment order must be nonnegative")
    return _half_line_integral(lambda x: x**order * f(x), f, cfg)


def moment_derivative_gap(f, F, kind, n, cfg=None, step=0.02):
    """Gap in the identity linking derivatives of F at 0 to moments of f.

    Cosine: d^{2n}F/dk^{2n}(0) = (-1)^n sqrt(2/pi) int zeta^{2n} f.
    Sine: d^{2n+1}F/dk^{2n+1}(0) = (-1)^n sqrt(2/pi) int zeta^{2n+1} f.
    The derivative of the other parity must vanish; the larger of the
    two discrepancies is returned.
    """
    kind = as_kind(kind)
    order = 2 * n if kind is TransformKind.COSINE else 2 * n + 1
    moment = weighted_moment(f, order, cfg)
    lhs = derivative_at_origin(F, order, step=step)
    gap = abs(lhs - (-1) ** n * SQRT_2_OVER_PI * moment)
    vanishing = order + 1 if kind is TransformKind.COSINE else order - 1
    gap = max(gap, abs(derivative_at_origin(F, vanishing, step=step)))
    return gap


def _parity_extension(f, kind):
    kind = as_kind(kind)
    if kind is TransformKind.SINE:
        return lambda x: np.sign(x) * f(np.abs(x))
    return lambda x: f(np.abs(x))


def second_derivative(f, kind, step=1e-2):
    """f'' by a five-point central difference of the odd/even extension of f."""
    ext = _parity_extension(f, kind)
    h = step

    def f2(x):
        x = np.asarray(x, dtype=float)
        return (
            -ext(x + 2 * h) + 16 * ext(x + h) - 30 * ext(x) + 16 * ext(x - h) - ext(x - 2 * h)
        ) / (12 * h * h)

    return f2


def second_derivative_identity_gap(f, kind, k_grid, cfg=None, f2=None):
    """max_k | F{f''}(k) + k^2 F{f}(k) |.

    ``f2`` is the second derivative if known; otherwise it is formed by
    finite differences of the parity extension of ``f``.
    """
    cfg = cfg or QuadratureConfig()
    kind = as_kind(kind)
    f2 = f2 or second_derivative(f, kind)
    k_grid = np.asarray(k_grid, dtype=float)
    lhs = forward_transform(f2, kind, k_grid, cfg).values
    rhs = forward_transform(f, kind, k_grid, cfg).values
    return float(np.max(np.abs(lhs + k_grid**2 * rhs))) if k_grid.size else 0.0


def zeta_derivative_identity_gap(f, kind, k_grid, cfg=None, step=1e-4):
    """max_k | F{zeta f'}(k) + F(k) + k F'(k) |.

    F'(k) is obtained by differentiating under the integral sign, so both
    sides are plain quadratures.
    """
    cfg = cfg or QuadratureConfig()
    kind = as_kind(kind)
    ext = _parity_extension(f, kind)
    h = step

    def zf1(x):
        x = np.asarray(x, dtype=float)
        d = (-ext(x + 2 * h) + 8 * ext(x + h) - 8 * ext(x - h) + ext(x - 2 * h)) / (12 * h)
        return x * d

    k_grid = np.asarray(k_grid, dtype=float)
    radius = cfg.truncation_radius
    lhs = forward_transform(zf1, kind, k_grid, cfg).values
    F = forward_transform(f, kind, k_grid, cfg).values
    other = TransformKind.COSINE if kind is TransformKind.SINE else TransformKind.SINE
    sign = 1.0 if kind is TransformKind.SINE else -1.0
    dF = sign * transform_values(lambda x: x * f(x), other, k_grid, radius, cfg)
    return float(np.max(np.abs(lhs + F + k_grid * dF))) if k_grid.size else 0.0


def exponential_transform_even(f, kappa, cfg=None, radius=None):
    """Exponential Fourier transform of an even real function at ``kappa``.

    (1/sqrt(2 pi)) int f(x) exp(i kappa x) dx reduces to the cosine
    transform at |kappa| for even f.
    """
    cfg = cfg or QuadratureConfig()
    radius = radius or cfg.truncation_radius
    return float(
        transform_values(f, TransformKind.COSINE, np.array([abs(kappa)]), radius, cfg)[0]
    )


def scaling_property_gap(f, c, kappa, cfg=None):
    """| F{f(c x)}(kappa) - F{f}(kappa / c) / |c| | for an even real f."""
    cfg = cfg or QuadratureConfig()
    if c == 0:
        raise ValueError("scale factor must be nonzero")
    probe = np.linspace(0.1, cfg.truncation_radius, 13)
    if not np.allclose(f(probe), f(-probe), rtol=1e-12, atol=1e-300):
        raise ValueError("scaling check needs an even function")
    radius = cfg.truncation_radius
    # f(c x) lives on radius / |c|; the extra unit keeps the two panel
    # layouts from being exact rescalings of each other
    lhs_radius = radius if abs(c) >= 1 else radius / abs(c) + 1.0
    lhs = exponential_transform_even(lambda x: f(c * x), kappa, cfg, lhs_radius)
    rhs = exponential_transform_even(f, kappa / c, cfg, radius) / abs(c)
    return abs(lhs - rhs)
