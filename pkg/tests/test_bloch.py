import numpy as np
import pytest

from psr.bloch import (
    BlochVector,
    FieldPair,
    bloch_components,
    bloch_components_matrix,
    build_bloch_matrix,
    eta_integrand,
    eta_integrand_prefactor8,
    eta_values,
    steady_state_closed_form,
    steady_state_matrix,
)
from psr.units import DimensionlessParams


def _random_fields(rng, n, scale=10.0):
    e = rng.uniform(-scale, scale, size=(n, 4))
    return e[:, 0] + 1j * e[:, 1], e[:, 2] + 1j * e[:, 3]


def _random_params(rng, physical=True):
    tau1 = rng.uniform(1.0, 1e3)
    hi = min(1e2, 2.0 * tau1) if physical else 1e2
    tau2 = rng.uniform(0.1, hi)
    return DimensionlessParams(
        gamma_plus=rng.uniform(1.0, 20.0),
        gamma_minus=rng.uniform(0.1, 1.0),
        tau1=tau1,
        tau2=tau2,
    )


def test_zero_fields_ground_state(para_params):
    f = FieldPair(0j, 0j)
    for solver in (steady_state_matrix, steady_state_closed_form):
        r = solver(f, para_params)
        assert (r.r1, r.r2, r.r3) == (0.0, 0.0, -1.0)


def test_zero_field_matrix_is_pure_damping(para_params):
    m = build_bloch_matrix(FieldPair(0j, 0j), para_params)
    p = para_params.tau1 / para_params.tau2
    assert np.allclose(m, -np.diag([p, p, 1.0]))


def test_matrix_antisymmetric_part(rng, para_params):
    p = para_params.tau1 / para_params.tau2
    for _ in range(20):
        eR, eL = _random_fields(rng, 1)
        m = build_bloch_matrix(FieldPair(eR[0], eL[0]), para_params)
        assert np.allclose(m + m.T, -2.0 * np.diag([p, p, 1.0]), atol=1e-9)


def test_matrix_entries_unit_fields():
    params = DimensionlessParams(gamma_plus=15.0, gamma_minus=0.64, tau1=1.0, tau2=1.0)
    m = build_bloch_matrix(FieldPair(1 + 0j, 1 + 0j), params)
    # a = 2 * 0.64 * 2 = 2.56, b = -4 Im(1) = 0, c = 4 Re(1) = 4
    assert m[0, 1] == pytest.approx(2.56)
    assert m[0, 2] == pytest.approx(0.0)
    assert m[1, 2] == pytest.approx(4.0)


def test_closed_form_matches_matrix_solve(rng):
    for _ in range(50):
        params = _random_params(rng, physical=False)
        eR, eL = _random_fields(rng, 200)
        r1, r2, r3, _ = bloch_components(eR, eL, params)
        m1, m2, m3 = bloch_components_matrix(eR, eL, params)
        scale = np.maximum(np.abs(np.stack([m1, m2, m3])), 1e-30)
        err = np.abs(np.stack([r1 - m1, r2 - m2, r3 - m3])) / scale
        assert err.max() < 1e-10


def test_one_field_means_ground_state(rng, para_params):
    eR, _ = _random_fields(rng, 100)
    r1, r2, r3, _ = bloch_components(eR, np.zeros_like(eR), para_params)
    assert np.allclose(r1, 0.0) and np.allclose(r2, 0.0)
    assert np.allclose(r3, -1.0)


def test_swap_symmetry(rng, para_params):
    eR, eL = _random_fields(rng, 500)
    r1, r2, r3, _ = bloch_components(eR, eL, para_params)
    s1, s2, s3, _ = bloch_components(eL, eR, para_params)
    assert np.allclose(r3, s3, rtol=1e-13)
    assert np.allclose(r1 ** 2 + r2 ** 2, s1 ** 2 + s2 ** 2, rtol=1e-12)


def test_r3_always_in_unit_interval(rng):
    for physical in (True, False):
        for _ in range(20):
            params = _random_params(rng, physical=physical)
            eR, eL = _random_fields(rng, 500)
            _, _, r3, _ = bloch_components(eR, eL, params)
            assert np.all(r3 <= 0.0)
            assert np.all(r3 >= -1.0)


def test_bloch_sphere_bound_in_physical_region(rng):
    """|r| <= 1 whenever tau2 <= 2 tau1 (positivity of the dissipator)."""
    worst = 0.0
    for _ in range(40):
        params = _random_params(rng, physical=True)
        eR, eL = _random_fields(rng, 1000)
        r1, r2, r3, _ = bloch_components(eR, eL, params)
        worst = max(worst, float(np.max(r1 ** 2 + r2 ** 2 + r3 ** 2)))
    assert worst <= 1.0 + 1e-12


def test_bloch_sphere_bound_fails_beyond_positivity_boundary():
    """For tau2 > 2 tau1 the steady state leaves the unit sphere.

    This documents why the blanket |r| <= 1 claim cannot hold over parameter
    boxes that include tau2 > 2 tau1; see notes on the acceptance suite.
    """
    params = DimensionlessParams(gamma_plus=15.0, gamma_minus=0.64, tau1=1.0, tau2=100.0)
    r = steady_state_closed_form(FieldPair(1 + 0j, 1 + 0j), params)
    assert r.norm_sq > 1.5  # far outside, not a rounding artifact
    m = steady_state_matrix(FieldPair(1 + 0j, 1 + 0j), params)
    assert m.norm_sq == pytest.approx(r.norm_sq, rel=1e-10)


def test_eta_zero_when_one_field_vanishes(para_params):
    assert eta_integrand(FieldPair(2.0 + 1j, 0j), para_params) == 0.0
    assert eta_integrand(FieldPair(0j, 0.3 - 0.7j), para_params) == 0.0


def test_eta_nonnegative(rng, para_params):
    eR, eL = _random_fields(rng, 2000)
    assert np.all(eta_values(eR, eL, para_params) >= 0.0)


def test_eta_equals_expanded_closed_form(rng):
    """(r1^2 + r2^2)(R + L) == 16 tau2^2 R L (R+L) (1 + kappa^2) / D^2."""
    for _ in range(10):
        params = _random_params(rng)
        eR, eL = _random_fields(rng, 500)
        R = np.abs(eR) ** 2
        L = np.abs(eL) ** 2
        t1, t2, gm = params.tau1, params.tau2, params.gamma_minus
        k2 = 4.0 * t2 ** 2 * gm ** 2 * (R + L) ** 2
        D = 1.0 + k2 + 16.0 * t1 * t2 * R * L
        expected = 16.0 * t2 ** 2 * R * L * (R + L) * (1.0 + k2) / D ** 2
        got = eta_values(eR, eL, params)
        assert np.allclose(got, expected, rtol=1e-11, atol=1e-300)


def test_eta_prefactor8_form_is_half_the_definitional_value(rng, para_params):
    eR, eL = _random_fields(rng, 50)
    for a, b in zip(eR, eL):
        f = FieldPair(a, b)
        full = eta_integrand(f, para_params)
        printed = eta_integrand_prefactor8(f, para_params)
        assert printed == pytest.approx(full / 2.0, rel=1e-12)


def test_eta_vanishes_with_coherence_time(para_params):
    f = FieldPair(1.0 + 0.5j, 0.7 - 0.2j)
    base = eta_integrand(f, para_params)
    small = eta_integrand(
        f, DimensionlessParams(15.0, 0.64, para_params.tau1, 1e-6))
    smaller = eta_integrand(
        f, DimensionlessParams(15.0, 0.64, para_params.tau1, 1e-7))
    assert small < 1e-4 * base
    # quadratic in tau2 once the denominator saturates at 1
    assert smaller / small == pytest.approx(1e-2, rel=0.05)


def test_blochvector_accessors():
    r = BlochVector(r1=0.3, r2=-0.4, r3=-0.5)
    assert r.rT == 0.3 - 0.4j
    assert r.norm_sq == pytest.approx(0.09 + 0.16 + 0.25)
