"""Invariant suites run by ``qho-fourier verify``.

Each check is named ``<module>.<invariant>`` after the property it
measures, and records the measured value next to its tolerance.
"""
import math
from dataclasses import asdict, dataclass

import numpy as np

from . import oracle, oscillator, specfun, transforms
from .errors import ParityMismatch
from .oscillator import CandidateExponent
from .quadrature import QuadratureConfig
from .transforms import GridFunction, TransformKind

SUITES = ("specfun", "transforms", "oscillator", "oracle")


@dataclass
class Check:
    name: str
    passed: bool
    value: float
    tolerance: float

    @classmethod
    def at_most(cls, name, value, tolerance):
        value = float(value)
        return cls(name, bool(math.isfinite(value) and value <= tolerance), value, float(tolerance))

    def as_dict(self):
        return asdict(self)


GAUSS_FAMILY = {
    "gauss": (lambda z: np.exp(-z * z), TransformKind.COSINE),
    "x_gauss": (lambda z: z * np.exp(-z * z), TransformKind.SINE),
    "x3_gauss": (lambda z: z**3 * np.exp(-z * z), TransformKind.SINE),
}


# -- specfun ---------------------------------------------------------------

def specfun_checks(seed=0):
    rng = np.random.default_rng(seed)
    zs = rng.uniform(0.0, 30.0, 200)
    zs = zs[zs > 1e-6]
    rec = max(abs(specfun.gamma(z + 1) / (z * specfun.gamma(z)) - 1) for z in zs)
    out = [Check.at_most("specfun.gamma_recurrence", rec, 1e-12)]

    z = np.arange(0.0, 2.01, 0.25)
    worst = 0.0
    for n in range(7):
        vals = np.array([specfun.kummer_series(specfun.KummerParams(-n, 0.5, t)) for t in z])
        worst = max(worst, float(np.max(np.abs(np.diff(vals, n + 1)))))
    out.append(Check.at_most("specfun.kummer_polynomial_degree", worst, 1e-10))

    x = np.linspace(-4, 4, 161)
    par = max(
        float(np.max(np.abs(specfun.hermite(n, -x) - (-1) ** n * specfun.hermite(n, x))))
        for n in range(21)
    )
    out.append(Check.at_most("specfun.hermite_parity", par, 0.0))

    h = 1e-5
    slope = max(
        abs((specfun.hermite(2 * n, h) - specfun.hermite(2 * n, -h)) / (2 * h)) for n in range(11)
    )
    odd0 = max(abs(specfun.hermite(2 * n + 1, 0.0)) for n in range(11))
    out.append(Check.at_most("specfun.hermite_origin", max(slope / 1e-8, odd0), 1.0))

    out.append(Check.at_most("specfun.laguerre_hermite", laguerre_hermite_defect(), 1e-10))
    out.append(Check.at_most("specfun.kummer_hermite", kummer_hermite_defect(), 1e-10))
    return out


def _proportional_defect(num, den, x):
    c = specfun.proportionality_constant(num, den, x)
    a = np.asarray(num(x))
    return float(np.max(np.abs(a - c * np.asarray(den(x)))) / np.max(np.abs(a)))


def laguerre_hermite_defect(n_max=8, x=None):
    """Largest deviation of H_2n / L_n^(-1/2)(x^2) and H_2n+1 / (x L_n^(1/2)(x^2)) from constants."""
    x = np.linspace(0.0, 4.0, 161) if x is None else x
    worst = 0.0
    for n in range(n_max + 1):
        worst = max(
            worst,
            _proportional_defect(
                lambda t: specfun.hermite(2 * n, t), lambda t: specfun.laguerre(n, -0.5, t * t), x
            ),
            _proportional_defect(
                lambda t: specfun.hermite(2 * n + 1, t),
                lambda t: t * specfun.laguerre(n, 0.5, t * t),
                x,
            ),
        )
    return worst


def kummer_hermite_defect(n_max=12, x=None):
    """Largest deviation of the Kummer polynomials from multiples of H_n."""
    x = np.linspace(0.0, 4.0, 81) if x is None else x

    def kummer(n):
        if n % 2 == 0:
            return lambda t: np.array(
                [specfun.kummer_series(specfun.KummerParams(-n / 2, 0.5, s * s)) for s in t]
            )
        return lambda t: t * np.array(
            [specfun.kummer_series(specfun.KummerParams(-(n - 1) / 2, 1.5, s * s)) for s in t]
        )

    return max(
        _proportional_defect(kummer(n), lambda t: specfun.hermite(n, t), x) for n in range(n_max + 1)
    )


# -- transforms ------------------------------------------------------------

def transforms_checks(cfg=None, seed=0):
    cfg = cfg or QuadratureConfig()
    k_grid = np.linspace(0.0, 16.0, 801)
    zeta = np.linspace(0.0, 6.0, 61)
    round_trip = parseval = moment = 0.0
    duality = 0.0
    for f, kind in GAUSS_FAMILY.values():
        F = transforms.forward_transform(f, kind, k_grid, cfg)
        back = transforms.inverse_transform(F, kind, zeta, cfg)
        round_trip = max(round_trip, float(np.max(np.abs(back.values - f(zeta)))))
        parseval = max(parseval, transforms.parseval_gap(f, F, cfg))
        for n in (0, 1):
            moment = max(moment, transforms.moment_derivative_gap(f, F, kind, n, cfg))
        if kind is TransformKind.SINE:
            duality = max(duality, abs(F.values[0]))
        else:
            duality = max(duality, abs(transforms.derivative_at_origin(F, 1, extra=6)))
    out = [
        Check.at_most("transforms.roundtrip", round_trip, 1e-6),
        Check.at_most("transforms.parseval", parseval, 1e-6),
        Check.at_most("transforms.boundary_duality", duality, 1e-6),
        Check.at_most("transforms.moment_derivative", moment, 1e-4),
    ]

    rng = np.random.default_rng(seed)
    ks = np.linspace(0.0, 8.0, 17)
    lin = 0.0
    for _ in range(3):
        alpha, beta = rng.uniform(-2, 2, 2)
        f, g = GAUSS_FAMILY["x_gauss"][0], GAUSS_FAMILY["x3_gauss"][0]
        combo = transforms.forward_transform(lambda z: alpha * f(z) + beta * g(z), "sine", ks, cfg)
        parts = alpha * transforms.forward_transform(f, "sine", ks, cfg).values + beta * (
            transforms.forward_transform(g, "sine", ks, cfg).values
        )
        lin = max(lin, float(np.max(np.abs(combo.values - parts))))
    out.append(Check.at_most("transforms.linearity", lin, 1e-8))

    second = max(
        transforms.second_derivative_identity_gap(f, kind, ks, cfg)
        for f, kind in GAUSS_FAMILY.values()
    )
    out.append(Check.at_most("transforms.second_derivative_identity", second, 1e-6))
    first = max(
        transforms.zeta_derivative_identity_gap(f, kind, ks, cfg) for f, kind in GAUSS_FAMILY.values()
    )
    out.append(Check.at_most("transforms.zeta_derivative_identity", first, 1e-6))
    gauss = GAUSS_FAMILY["gauss"][0]
    scaling = max(
        transforms.scaling_property_gap(gauss, c, kappa, cfg)
        for c, kappa in ((2.0, 1.0), (1.0, 1.0), (-1.0, 1.0), (0.5, 1.3), (-3.0, 2.5))
    )
    out.append(Check.at_most("transforms.scaling_property", scaling, 1e-6))
    return out


# -- oscillator ------------------------------------------------------------

def exact_ode_residual(count=50, seed=0):
    rng = np.random.default_rng(seed)
    k = np.linspace(oscillator.K_MIN, 12.0, 2001)
    worst = 0.0
    for a in rng.uniform(-0.4, 10.0, count):
        # dyadic a, so that eps = a + 1/2 is exact in floating point
        c = CandidateExponent(math.ldexp(round(math.ldexp(a, 40)), -40))
        worst = max(worst, oscillator.transformed_ode_residual(c, c.epsilon, k))
    return worst


def scan_values(a_min, a_max, step):
    count = int(math.floor((a_max - a_min) / step + 1e-9)) + 1
    return [round(a_min + j * step, 12) for j in range(count)]


def scan_rows(a_values, kind):
    """Admissibility flags and, for rejected a > -1/2, the growth flag."""
    rows = []
    for a in a_values:
        c = CandidateExponent(a, kind)
        adm = oscillator.classify_exponent(c)
        growth = None
        if not adm.accepted and a > -0.5:
            growth, _ = oscillator.growth_diagnostic(c, oscillator.turning_point_probe(a))
        rows.append((a, adm, growth))
    return rows


def expected_accepted(a_values, kind):
    first = 0 if TransformKind(kind) is TransformKind.COSINE else 1
    return sorted(
        n for n in range(first, int(max(a_values)) + 2, 2) if min(a_values) <= n <= max(a_values)
    )


def quantization_mismatches(rows, kind):
    """Symmetric difference between the accepted exponents and the expected integers."""
    a_values = [r[0] for r in rows]
    got = {int(round(a)) for a, adm, _ in rows if adm.accepted}
    return len(got.symmetric_difference(expected_accepted(a_values, kind)))


def nondegeneracy_failures(n_max=8):
    """Count of n where not exactly one parity class extends continuously."""
    zeta = np.linspace(0.0, 6.0, 601)
    failures = 0
    for n in range(n_max + 1):
        passing = 0
        for kind in TransformKind:
            phi = np.exp(-zeta * zeta) * specfun.hermite(n, zeta)
            half = GridFunction(zeta, phi, parity="none")
            extension = "symmetric" if kind is TransformKind.COSINE else "antisymmetric"
            try:
                oscillator.parity_extend(half, n, extension)
                passing += 1
            except ParityMismatch:
                pass
        failures += passing != 1
    return failures


def transform_pair_defect(n_max=8, spacing=0.01):
    """Relative deviation of forward(invert(k^n e^{-k^2/4})) from k^n e^{-k^2/4}."""
    zeta = np.arange(0.0, 7.0 + spacing / 2, spacing)
    k = np.linspace(0.2, 6.0, 59)
    worst = 0.0
    for n in range(n_max + 1):
        kind = TransformKind.COSINE if n % 2 == 0 else TransformKind.SINE
        phi = oscillator.invert_candidate(CandidateExponent(n, kind), zeta).numeric
        F = transforms.forward_transform(phi, kind, k).values
        target = k**n * np.exp(-0.25 * k * k)
        c = float(F @ target / (target @ target))
        worst = max(worst, float(np.max(np.abs(F - c * target)) / np.max(np.abs(F))))
    return worst


def branch_invariance_defect():
    k = np.linspace(0.05, 10.0, 400)
    worst = 0.0
    for a in (0.25, 1.0 / 3.0, 0.5, 2.0, math.sqrt(2.0)):
        base = CandidateExponent(a, m=0)
        ref = oscillator.phi_transform(base, k)
        ref_norm = np.trapezoid(ref * ref, k)
        for m in range(-2, 3):
            c = CandidateExponent(a, m=m)
            mod = np.abs(oscillator.branch_phase(c) * oscillator.phi_transform(c, k))
            worst = max(worst, float(np.max(np.abs(mod - ref))))
            worst = max(worst, abs(np.trapezoid(mod * mod, k) - ref_norm))
    return worst


def growth_separation_failures():
    """Cases where the growth flag contradicts admissibility."""
    bad = 0
    for a, kind in ((0.3, "cosine"), (0.5, "cosine"), (1.5, "cosine"), (2.5, "sine")):
        bad += not oscillator.growth_diagnostic(CandidateExponent(a, kind))[0]
    for n in range(9):
        kind = "cosine" if n % 2 == 0 else "sine"
        bad += oscillator.growth_diagnostic(CandidateExponent(n, kind))[0]
    return bad


def closed_form_defect(n_max=8):
    """Inversion of k^n e^{-k^2/4} against e^{-z^2} H_n(z), one fitted constant."""
    zeta = np.linspace(0.0, 6.0, 241)
    worst = 0.0
    for n in range(n_max + 1):
        kind = TransformKind.COSINE if n % 2 == 0 else TransformKind.SINE
        num = oscillator.invert_candidate(CandidateExponent(n, kind), zeta).numeric.values
        ref = np.exp(-zeta * zeta) * specfun.hermite(n, zeta)
        i = np.flatnonzero(np.abs(num) > 1e-12)[0]
        ref = ref * num[i] / ref[i]
        worst = max(worst, float(np.max(np.abs(num - ref)) / np.max(np.abs(num))))
    return worst


def orthonormality_defect(n_max=8, x=None):
    pairs = [oscillator.eigenpair(n, x) for n in range(n_max + 1)]
    return max(
        abs(oscillator.overlap(p, q) - (p.n == q.n)) for p in pairs for q in pairs
    )


def schrodinger_defect(n_max=8, x=None):
    return max(oscillator.schrodinger_residual(oscillator.eigenpair(n, x)) for n in range(n_max + 1))


def oscillator_checks(pair_spacing=0.01):
    out = [Check.at_most("oscillator.exact_ode_residual", exact_ode_residual(), 1e-12)]
    a_values = scan_values(-0.45, 6.05, 0.05)
    mism = 0
    for kind in TransformKind:
        mism += quantization_mismatches(scan_rows(a_values, kind), kind)
    out.append(Check.at_most("oscillator.quantization", mism, 0))
    out.append(Check.at_most("oscillator.orthonormality", orthonormality_defect(), 1e-6))
    out.append(Check.at_most("oscillator.schrodinger_residual", schrodinger_defect(), 1e-2))
    out.append(Check.at_most("oscillator.nondegeneracy", nondegeneracy_failures(), 0))
    out.append(
        Check.at_most(
            "oscillator.transform_pair_consistency",
            transform_pair_defect(spacing=pair_spacing),
            1e-5,
        )
    )
    out.append(Check.at_most("oscillator.branch_invariance", branch_invariance_defect(), 1e-12))
    out.append(Check.at_most("oscillator.growth_diagnostic", growth_separation_failures(), 0))
    out.append(Check.at_most("oscillator.closed_form_inversion", closed_form_defect(), 1e-5))
    return out


# -- oracle ----------------------------------------------------------------

def eigenvalue_error(pairs):
    return max(abs(p.epsilon - (p.n + 0.5)) for p in pairs)


def eigenvector_defect(pairs, n_max=6):
    worst = 0.0
    for p in pairs[: n_max + 1]:
        ref = oscillator.eigenpair(p.n, p.x).psi.values
        v = p.psi.values
        v = v if np.dot(v, ref) >= 0 else -v
        worst = max(worst, float(np.max(np.abs(v - ref))))
    return worst


def oracle_checks(cfg=None):
    cfg = cfg or oracle.FdConfig()
    pairs = oracle.fd_eigensolve(cfg)
    out = [Check.at_most("oracle.eigenvalues", eigenvalue_error(pairs), 1e-3)]
    fine = oracle.fd_eigensolve(oracle.FdConfig(cfg.half_width, 2 * cfg.points + 1, cfg.n_states))
    ratio = abs(pairs[-1].epsilon - (pairs[-1].n + 0.5)) / abs(fine[-1].epsilon - (fine[-1].n + 0.5))
    out.append(Check.at_most("oracle.second_order_convergence", abs(ratio - 4.0), 0.5))
    out.append(Check.at_most("oracle.eigenvector_agreement", eigenvector_defect(pairs), 1e-3))
    alternation = 0.0
    for p in pairs:
        even_defect, odd_defect = oracle.parity_defect(p.psi)
        alternation = max(alternation, even_defect if p.n % 2 == 0 else odd_defect)
    out.append(Check.at_most("oracle.parity_alternation", alternation, 1e-6))
    f = lambda k: np.exp(-0.25 * k * k)
    first = oracle.reference_quadrature(f)
    again = oracle.reference_quadrature(f)
    out.append(Check.at_most("oracle.reference_quadrature_determinism", abs(first - again), 0.0))
    return out


def run_suite(name):
    if name == "all":
        checks = []
        for suite in SUITES:
            checks.extend(run_suite(suite))
        return checks
    return {
        "specfun": specfun_checks,
        "transforms": transforms_checks,
        "oscillator": oscillator_checks,
        "oracle": oracle_checks,
    }[name]()
