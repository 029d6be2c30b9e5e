import math

import numpy as np
import pytest

from psr.units import (
    DimensionlessParams,
    InvalidSpecError,
    MediumSpec,
    derive_units,
    dimensionless_params,
    preset_para_h2,
)


def test_para_h2_preset_values():
    spec, params = preset_para_h2(n=1e21)
    assert spec.epsilon_eg == 0.52
    assert params.gamma_plus == 15.0
    assert params.gamma_minus == 0.64


def test_para_h2_alpha_derived_gammas():
    spec, params = preset_para_h2(use_quoted_gammas=False)
    # (1.1 + 1.0) / (2 * 0.069) and (1.1 - 1.0) / (2 * 0.069)
    assert params.gamma_plus == pytest.approx(15.2174, rel=1e-4)
    assert params.gamma_minus == pytest.approx(0.72464, rel=1e-4)


def test_para_h2_scale_units():
    spec, _ = preset_para_h2(n=1e21)
    units = derive_units(spec)
    assert units.ct0_mm == pytest.approx(0.03, rel=0.15)
    assert units.E0_sq_W_mm2 == pytest.approx(1e12, rel=0.30)
    assert units.l0 == pytest.approx(2.99792458e8 * units.t0)


def test_density_rescaling_quadruple():
    spec1, _ = preset_para_h2(n=1e21)
    spec4, _ = preset_para_h2(n=4e21)
    u1, u4 = derive_units(spec1), derive_units(spec4)
    assert u4.t0 == pytest.approx(u1.t0 / 2.0, rel=1e-12)
    assert u4.E0_sq_W_mm2 == pytest.approx(2.0 * u1.E0_sq_W_mm2, rel=1e-12)


def test_density_rescaling_power_law(rng):
    base, _ = preset_para_h2(n=1e21)
    u0 = derive_units(base)
    for s in rng.uniform(0.01, 100.0, size=20):
        spec, _ = preset_para_h2(n=1e21 * s)
        u = derive_units(spec)
        assert u.t0 == pytest.approx(u0.t0 * s ** -0.5, rel=1e-12)
        assert u.E0_sq_W_mm2 == pytest.approx(u0.E0_sq_W_mm2 * s ** 0.5, rel=1e-12)


def test_gamma_plus_dominates_for_valid_specs(rng):
    for _ in range(200):
        aee, agg, age = rng.uniform(0.01, 10.0, size=3)
        spec = MediumSpec(alpha_ee=aee, alpha_gg=agg, alpha_ge=age,
                          epsilon_eg=1.0, n=1e20, T1=100.0, T2=10.0)
        p = dimensionless_params(spec)
        assert p.gamma_plus > abs(p.gamma_minus)


def test_symmetric_polarizabilities_give_zero_gamma_minus():
    spec = MediumSpec(alpha_ee=2.0, alpha_gg=2.0, alpha_ge=0.5,
                      epsilon_eg=1.0, n=1e20, T1=100.0, T2=10.0)
    assert dimensionless_params(spec).gamma_minus == 0.0


def test_relaxation_seconds_round_trip():
    spec, _ = preset_para_h2()
    t0 = derive_units(spec).t0
    spec_s = MediumSpec(alpha_ee=1.1e-23, alpha_gg=1.0e-23, alpha_ge=0.069e-23,
                        epsilon_eg=0.52, n=1e21, T1=300.0 * t0, T2=7.0 * t0,
                        relaxation_unit="s")
    p = dimensionless_params(spec_s)
    assert p.tau1 / p.tau2 == pytest.approx(300.0 / 7.0, rel=1e-14)
    assert p.tau1 == pytest.approx(300.0, rel=1e-12)


@pytest.mark.parametrize("field,value", [
    ("alpha_ge", 0.0),
    ("alpha_ge", -1e-23),
    ("epsilon_eg", -0.5),
    ("n", 0.0),
    ("T2", 0.0),
])
def test_invalid_specs_rejected(field, value):
    kw = dict(alpha_ee=1.1e-23, alpha_gg=1.0e-23, alpha_ge=0.069e-23,
              epsilon_eg=0.52, n=1e21, T1=1000.0, T2=10.0)
    kw[field] = value
    with pytest.raises(InvalidSpecError):
        MediumSpec(**kw)


def test_t1_below_t2_warns_but_builds():
    with pytest.warns(UserWarning, match="T1 < T2"):
        spec = MediumSpec(alpha_ee=1.1e-23, alpha_gg=1.0e-23, alpha_ge=0.069e-23,
                          epsilon_eg=0.52, n=1e21, T1=5.0, T2=10.0)
    assert dimensionless_params(spec).tau1 == 5.0


def test_params_require_positive_taus():
    with pytest.raises(InvalidSpecError):
        DimensionlessParams(gamma_plus=15.0, gamma_minus=0.64, tau1=-1.0, tau2=10.0)
