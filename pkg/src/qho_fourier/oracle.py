"""Independent checks: a finite-difference eigensolver and a reference quadrature.

Neither shares code with the transform pipeline. The eigensolver
discretizes -psi''/2 + x^2 psi/2 = eps psi with second-order central
differences and Dirichlet ends; the quadrature is a double-exponential
(exp-sinh) rule refined by halving its step.
"""
import math
from dataclasses import dataclass

import numpy as np

from ._backend import core
from .errors import ConvergenceFailure, NoConvergence, TailNotDecayed
from .oscillator import Eigenpair, sign_convention
from .quadrature import QuadratureConfig, check_origin
from .transforms import GridFunction


@dataclass(frozen=True)
class FdConfig:
    half_width: float = 12.0
    points: int = 4000
    n_states: int = 9

    def __post_init__(self):
        if self.points < 100:
            raise ValueError("need at least 100 grid points")
        if self.half_width < 6:
            raise ValueError("half_width must be at least 6")
        if not 1 <= self.n_states <= self.points / 10:
            raise ValueError("n_states must lie in [1, points / 10]")

    @property
    def spacing(self):
        return 2.0 * self.half_width / (self.points + 1)

    @property
    def grid(self):
        """Interior nodes plus the two Dirichlet end points."""
        return np.linspace(-self.half_width, self.half_width, self.points + 2)


def hamiltonian_bands(cfg):
    """Diagonal and off-diagonal of the discretized Hamiltonian on interior nodes."""
    x = cfg.grid[1:-1]
    h = cfg.spacing
    d = 1.0 / (h * h) + 0.5 * x * x
    e = np.full(cfg.points - 1, -0.5 / (h * h))
    return d, e


def _inverse_iteration(d, e, lam, rng, max_iter=8, tol=1e-10):
    n = d.size
    v = rng.standard_normal(n)
    v /= np.linalg.norm(v)
    scale = np.max(np.abs(d)) + 2 * np.max(np.abs(e))
    shift = lam + 4 * np.finfo(float).eps * scale
    for _ in range(max_iter):
        w = core.shifted_solve(d, e, shift, v)
        w /= np.linalg.norm(w)
        tv = d * w
        tv[:-1] += e * w[1:]
        tv[1:] += e * w[:-1]
        v = w
        if np.linalg.norm(tv - lam * w) <= tol * scale:
            return v
    raise ConvergenceFailure(f"inverse iteration for eigenvalue {lam:.12g} did not converge")


def fd_eigensolve(cfg=None):
    """Lowest ``cfg.n_states`` eigenpairs of the finite-difference Hamiltonian.

    Eigenvalues come from Sturm-sequence bisection, eigenvectors from
    inverse iteration; vectors are normalized to unit trapezoidal norm and
    made positive beyond their last node, as in ``oscillator.eigenpair``.

    Raises
    ------
    ConvergenceFailure
        If bisection exceeds 10 * points halvings or inverse iteration stalls.
    """
    cfg = cfg or FdConfig()
    d, e = hamiltonian_bands(cfg)
    values, iters = core.bisect_eigenvalues(d, e, 0, cfg.n_states, 1e-15, 10 * cfg.points)
    if iters < 0:
        raise ConvergenceFailure("Sturm bisection hit its iteration cap")
    x = cfg.grid
    h = cfg.spacing
    rng = np.random.default_rng(20240611)
    pairs = []
    for n, lam in enumerate(values):
        v = _inverse_iteration(d, e, float(lam), rng)
        psi = np.concatenate([[0.0], v, [0.0]])
        psi /= math.sqrt(np.trapezoid(psi * psi, dx=h))
        psi *= sign_convention(psi)
        parity = "even" if n % 2 == 0 else "odd"
        pairs.append(Eigenpair(n, float(lam), GridFunction(x, psi, parity=parity), 1.0))
    return pairs


def parity_defect(psi):
    """(even defect, odd defect): norms of psi(x) -/+ psi(-x) relative to |psi|."""
    v = psi.values
    r = v[::-1]
    nv = np.linalg.norm(v)
    return float(np.linalg.norm(v - r) / nv), float(np.linalg.norm(v + r) / nv)


def _exp_sinh_nodes(level, t_max):
    h = 2.0 ** -level
    t = np.arange(-t_max, t_max + 0.5 * h, h)
    s = 0.5 * math.pi * np.sinh(t)
    x = np.exp(s)
    w = 0.5 * math.pi * np.cosh(t) * x
    return t, x, w, h


def reference_quadrature(integrand, cfg=None, t_max=4.5, max_level=12):
    """int_0^inf integrand by the exp-sinh rule x = exp(pi/2 sinh t).

    The trapezoidal step in t is halved until two successive levels agree
    to ``cfg.rel_tol``. Algebraic singularities at 0 and algebraic or
    faster decay at infinity are handled by the map itself.

    Raises
    ------
    SingularityTooStrong
        For a non-integrable power at the origin.
    TailNotDecayed
        If the integrand is not finite, or not negligible, at the far nodes.
    """
    cfg = cfg or QuadratureConfig()
    check_origin(integrand, cfg.truncation_radius)
    previous = None
    for level in range(max_level + 1):
        _, x, w, h = _exp_sinh_nodes(level, t_max)
        with np.errstate(over="ignore", invalid="ignore", under="ignore"):
            y = np.asarray(integrand(x), dtype=float) * w
        big = x > cfg.truncation_radius
        if not np.all(np.isfinite(y[big])):
            raise TailNotDecayed("integrand is not finite far beyond the truncation radius")
        y = np.where(np.isfinite(y), y, 0.0)
        total = h * y.sum()
        l1 = h * np.abs(y).sum()
        if abs(y[-1]) > cfg.rel_tol * max(l1, 1e-300) and y[-1] != 0.0:
            raise TailNotDecayed("integrand has not decayed at the last exp-sinh node")
        if previous is not None and abs(total - previous) <= cfg.rel_tol * max(abs(total), l1):
            return float(total)
        if l1 == 0.0:
            return 0.0
        previous = total
    raise NoConvergence("exp-sinh refinement did not settle")
