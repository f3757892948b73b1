import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qho_fourier import oscillator as osc
from qho_fourier import specfun
from qho_fourier.errors import DomainError, GridTooCoarse, GridTooSmall, ParityMismatch
from qho_fourier.oscillator import CandidateExponent
from qho_fourier.transforms import GridFunction

# frozen from the normalization integral int e^{-x^2} dx by the reference quadrature
PSI0_AT_ZERO = 0.7511255444649421


def test_phi_transform_values():
    assert osc.phi_transform(CandidateExponent(0), 2.0) == pytest.approx(math.exp(-1), rel=1e-15)
    assert osc.phi_transform(CandidateExponent(1), 1e-9) < 1e-8
    small = osc.phi_transform(CandidateExponent(-0.4), np.array([1e-2, 1e-4, 1e-6]))
    assert np.all(np.diff(small) > 0)
    with pytest.raises(DomainError):
        osc.phi_transform(CandidateExponent(1), 0.0)


@pytest.mark.parametrize(
    "a, m, expected",
    [(1 / 3, 1, cmath.exp(2j * math.pi / 3)), (2.0, 5, 1.0), (2.0, -3, 1.0), (0.5, 1, -1.0)],
)
def test_branch_phase(a, m, expected):
    assert abs(osc.branch_phase(CandidateExponent(a, m=m)) - expected) < 1e-15


@settings(max_examples=50, deadline=None)
@given(st.floats(-0.4, 10.0), st.integers(-5, 5))
def test_branch_phase_is_unimodular(a, m):
    c = CandidateExponent(a, m=m)
    assert abs(abs(osc.branch_phase(c)) - 1) < 1e-15
    k = np.linspace(0.1, 5, 11)
    np.testing.assert_array_equal(osc.phi_transform(c, k), osc.phi_transform(CandidateExponent(a), k))


K = np.linspace(osc.K_MIN, 12.0, 2001)


@pytest.mark.parametrize("a, eps", [(3.0, 3.5), (0.0, 0.5)])
def test_ode_residual_exact(a, eps):
    assert osc.transformed_ode_residual(CandidateExponent(a), eps, K) <= 1e-12


def test_ode_residual_wrong_epsilon():
    k = np.linspace(0.5, 4, 50)
    assert osc.transformed_ode_residual(CandidateExponent(3.0), 2.0, k) > 0.1


def test_ode_residual_domain():
    with pytest.raises(DomainError):
        osc.transformed_ode_residual(CandidateExponent(1.0), 1.5, [0.0, 1.0])


@settings(max_examples=50, deadline=None)
@given(st.floats(-0.4, 10.0))
def test_ode_solved_for_every_real_a(a):
    a = math.ldexp(round(math.ldexp(a, 40)), -40)
    assert osc.transformed_ode_residual(CandidateExponent(a), a + 0.5, K) <= 1e-12


@pytest.mark.parametrize(
    "a, kind, accepted, reason",
    [
        (2.0, "cosine", True, None),
        (2.0, "sine", False, "parity"),
        (-0.7, "cosine", False, "parseval"),
        (0.5, "cosine", False, "derivative_conditions"),
        (-1.5, "sine", False, "moment"),
        (-2.0, "cosine", False, "derivative_conditions"),
    ],
)
def test_classify(a, kind, accepted, reason):
    adm = osc.classify_exponent(CandidateExponent(a, kind))
    assert adm.accepted is accepted
    if reason:
        assert reason in adm.reasons


@settings(max_examples=100, deadline=None)
@given(st.floats(-3.0, 12.0), st.sampled_from(["sine", "cosine"]))
def test_accepted_only_matching_integers(a, kind):
    adm = osc.classify_exponent(CandidateExponent(a, kind))
    n = osc.nearest_integer(a)
    want = n is not None and n >= 0 and (n % 2 == 0) == (kind == "cosine")
    assert adm.accepted == want
    assert adm.accepted == (not adm.reasons)


def test_closed_form_shapes():
    z = np.array([0.0, 1.0])
    cos0 = osc.closed_form(CandidateExponent(0, "cosine"), z)
    assert cos0[1] / cos0[0] == pytest.approx(math.exp(-1), abs=1e-12)
    assert osc.closed_form(CandidateExponent(1, "sine"), z)[0] == 0.0


def test_inversion_ground_state_ratio():
    inv = osc.invert_candidate(CandidateExponent(0), np.array([0.0, 1.0]))
    assert inv.numeric.values[1] / inv.numeric.values[0] == pytest.approx(math.exp(-1), abs=1e-6)
    assert inv.deviation < 1e-10


def test_inversion_odd_vanishes_at_origin():
    inv = osc.invert_candidate(CandidateExponent(1, "sine"), np.linspace(0, 3, 7))
    assert inv.numeric.values[0] == 0.0


def test_inversion_node_for_a2():
    # e^{-z^2}(1 - 2 z^2) changes sign at 1/sqrt(2)
    z = np.linspace(0.6, 0.8, 2001)
    inv = osc.invert_candidate(CandidateExponent(2), z)
    v = inv.numeric.values
    i = np.flatnonzero(np.sign(v[:-1]) != np.sign(v[1:]))[0]
    root = z[i] - v[i] * (z[i + 1] - z[i]) / (v[i + 1] - v[i])
    assert root == pytest.approx(1 / math.sqrt(2), abs=1e-4)


@pytest.mark.parametrize("n", range(9))
def test_inversion_matches_hermite(n):
    kind = "cosine" if n % 2 == 0 else "sine"
    z = np.linspace(0.0, 6.0, 121)
    inv = osc.invert_candidate(CandidateExponent(n, kind), z)
    ref = np.exp(-z * z) * specfun.hermite(n, z)
    i = np.flatnonzero(np.abs(inv.numeric.values) > 1e-12)[0]
    ref *= inv.numeric.values[i] / ref[i]
    scale = np.max(np.abs(inv.numeric.values))
    assert np.max(np.abs(inv.numeric.values - ref)) / scale <= 1e-5


def test_inversion_rejected_has_no_closed_form():
    inv = osc.invert_candidate(CandidateExponent(0.5), np.linspace(0, 3, 4))
    assert inv.closed_form is None and inv.deviation is None
    with pytest.raises(DomainError):
        osc.invert_candidate(CandidateExponent(-0.6), [1.0])


@pytest.mark.parametrize("a, kind, growing", [(0.5, "cosine", True), (2.0, "cosine", False), (1.0, "sine", False)])
def test_growth_diagnostic(a, kind, growing):
    flag, psi = osc.growth_diagnostic(CandidateExponent(a, kind))
    assert flag is growing
    assert psi.shape == (4,)


def test_growth_past_turning_point_separates_scan():
    for a in np.arange(-0.45, 6.06, 0.25):
        for kind in ("cosine", "sine"):
            c = CandidateExponent(round(a, 12), kind)
            flag, _ = osc.growth_diagnostic(c, osc.turning_point_probe(c.a))
            assert flag is not osc.classify_exponent(c).accepted


def test_kummer_ode_residual():
    z = np.arange(0.0, 6.0 + 5e-4, 1e-3)
    gauss = GridFunction(z, np.exp(-z * z), "even")
    odd = GridFunction(z, z * np.exp(-z * z), "odd")
    assert osc.kummer_ode_residual(gauss, 0.5) <= 1e-4
    assert osc.kummer_ode_residual(odd, 1.5) <= 1e-4
    assert osc.kummer_ode_residual(gauss, 2.0) >= 0.5
    coarse = GridFunction(np.linspace(0, 6, 7), np.exp(-np.linspace(0, 6, 7) ** 2))
    with pytest.raises(GridTooCoarse):
        osc.kummer_ode_residual(coarse, 0.5)


def test_parity_extend_ground_state():
    z = np.linspace(0, 8, 801)
    full = osc.parity_extend(GridFunction(z, np.exp(-z * z), "even"), 0)
    np.testing.assert_allclose(full.values, np.exp(-0.5 * full.grid**2), atol=1e-14)
    assert full.grid[0] == -8.0 and full.parity == "even"


def test_parity_extend_first_excited():
    z = np.linspace(0, 8, 801)
    full = osc.parity_extend(GridFunction(z, z * np.exp(-z * z), "odd"), 1)
    assert full.values[800] == 0.0
    np.testing.assert_allclose(full.values, full.grid * np.exp(-0.5 * full.grid**2), atol=1e-14)


@pytest.mark.parametrize("n", range(9))
def test_forbidden_extension_rejected(n):
    z = np.linspace(0, 6, 601)
    half = GridFunction(z, np.exp(-z * z) * specfun.hermite(n, z))
    allowed = "symmetric" if n % 2 == 0 else "antisymmetric"
    forbidden = "antisymmetric" if n % 2 == 0 else "symmetric"
    osc.parity_extend(half, n, allowed)
    with pytest.raises(ParityMismatch):
        osc.parity_extend(half, n, forbidden)


def test_parity_tag_mismatch():
    z = np.linspace(0, 6, 61)
    with pytest.raises(ParityMismatch):
        osc.parity_extend(GridFunction(z, np.exp(-z * z), "even"), 1)


def test_eigenpair_ground_state():
    p = osc.eigenpair(0)
    assert p.epsilon == 0.5
    assert p.psi(np.array([0.0]))[0] == pytest.approx(PSI0_AT_ZERO, abs=1e-6)
    assert p.psi(np.array([0.0]))[0] == pytest.approx(math.pi**-0.25, abs=1e-6)


def test_eigenpair_odd_and_sign():
    p1 = osc.eigenpair(1)
    assert p1.epsilon == 1.5 and p1.psi.values[p1.x.size // 2] == 0.0
    for n in range(6):
        v = osc.eigenpair(n).psi.values
        assert v[np.flatnonzero(np.abs(v) > 1e-3 * np.abs(v).max())[-1]] > 0
    assert osc.eigenpair(3).epsilon == 3.5


def test_eigenpair_grid_errors():
    with pytest.raises(GridTooSmall):
        osc.eigenpair(12, np.linspace(-4, 4, 801))
    with pytest.raises(ValueError):
        osc.eigenpair(0, np.linspace(-4, 5, 801))


def test_schrodinger_residual():
    assert osc.schrodinger_residual(osc.eigenpair(0)) <= 1e-3
    assert osc.schrodinger_residual(osc.eigenpair(5)) <= 1e-2
    assert osc.schrodinger_residual(osc.eigenpair(0), epsilon=1.5) >= 0.5


def test_orthonormality():
    pairs = [osc.eigenpair(n) for n in range(9)]
    gram = np.array([[osc.overlap(p, q) for q in pairs] for p in pairs])
    np.testing.assert_allclose(gram, np.eye(9), atol=1e-6)


def test_spectrum():
    assert osc.spectrum(0) == [0.5]
    assert osc.spectrum(3) == [0.5, 1.5, 2.5, 3.5]
    assert set(np.diff(osc.spectrum(20))) == {1.0}
    with pytest.raises(ValueError):
        osc.spectrum(-1)
