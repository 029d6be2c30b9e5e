"""Physical target description and conversion to dimensionless parameters.

A medium is described by its two-photon polarizability matrix (cm^3), the
transition energy between the two working levels (eV), the atomic number
density (cm^-3) and the two relaxation times.  Everything downstream of this
module works with four dimensionless numbers only:

    gamma_plus  = (alpha_ee + alpha_gg) / (2 alpha_ge)
    gamma_minus = (alpha_ee - alpha_gg) / (2 alpha_ge)
    tau1, tau2  = T1 / t0, T2 / t0

together with the basic scale units

    t0    = (eps_eg * sqrt(alpha_ge n) / 2)^-1      basic time
    l0    = c * t0                                  basic length
    E0^2  = eps_eg * sqrt(n / alpha_ge)             basic field strength^2

The para-hydrogen v = 0 <-> 1 vibrational transition is shipped as a preset.
Its polarizability matrix gives gamma_minus ~ 0.725 by direct arithmetic,
while the commonly quoted figure-grade value is 0.64; the preset exposes both
(see ``preset_para_h2``).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

__all__ = [
    "InvalidSpecError",
    "MediumSpec",
    "DerivedUnits",
    "DimensionlessParams",
    "derive_units",
    "dimensionless_params",
    "preset_para_h2",
    "PARA_H2_GAMMA_MINUS_QUOTED",
]

# CODATA / SI exact values, 12 significant digits where not exact.
HBAR_EV_S = 6.58211956909e-16   # hbar, eV s
C_CM_S = 2.99792458e10          # speed of light, cm/s (exact)
C_M_S = 2.99792458e8            # speed of light, m/s (exact)
EV_J = 1.60217663400e-19        # 1 eV in J (exact by SI definition)

#: figure-grade gamma_minus quoted for para-H2 (the alpha matrix itself
#: yields ~0.725; the source of the 0.64 value is not documented).
PARA_H2_GAMMA_MINUS_QUOTED = 0.64
PARA_H2_GAMMA_PLUS_QUOTED = 15.0


class InvalidSpecError(ValueError):
    """A medium specification violates its physical preconditions."""


@dataclass(frozen=True)
class MediumSpec:
    """Physical description of a two-level target medium.

    Polarizabilities in cm^3, transition energy in eV, density in cm^-3.
    ``T1``/``T2`` are interpreted according to ``relaxation_unit``:
    ``"t0"`` means they are already the dimensionless tau1/tau2,
    ``"s"`` means seconds (converted via the derived t0).
    """

    alpha_ee: float
    alpha_gg: float
    alpha_ge: float
    epsilon_eg: float
    n: float
    T1: float
    T2: float
    relaxation_unit: str = "t0"

    def __post_init__(self):
        if not (self.alpha_ge > 0):
            raise InvalidSpecError(f"alpha_ge must be > 0, got {self.alpha_ge}")
        if not (self.epsilon_eg > 0):
            raise InvalidSpecError(f"epsilon_eg must be > 0, got {self.epsilon_eg}")
        if not (self.n > 0):
            raise InvalidSpecError(f"n must be > 0, got {self.n}")
        if self.relaxation_unit not in ("t0", "s"):
            raise InvalidSpecError(
                f"relaxation_unit must be 't0' or 's', got {self.relaxation_unit!r}"
            )
        if not (self.T2 > 0 and self.T1 > 0):
            raise InvalidSpecError(
                f"relaxation times must be > 0, got T1={self.T1}, T2={self.T2}"
            )
        if self.T1 < self.T2:
            # The equations stay well defined; T1 >= T2 is the usual physical
            # regime, so flag but do not reject.
            warnings.warn(
                f"T1 < T2 (T1={self.T1}, T2={self.T2}); equations remain "
                "well-defined but this is outside the usual physical regime",
                stacklevel=2,
            )


@dataclass(frozen=True)
class DerivedUnits:
    """Basic scale units: time (s), length (m), intensity (W mm^-2).

    ``E0_sq_W_mm2`` is the intensity c * E0^2 associated with the basic
    field-strength-squared unit.  Under a density rescale n -> s*n,
    t0 scales like s^-1/2 and E0^2 like s^+1/2.
    """

    t0: float
    l0: float
    E0_sq_W_mm2: float

    @property
    def ct0_mm(self) -> float:
        return self.l0 * 1e3


@dataclass(frozen=True)
class DimensionlessParams:
    """The four dimensionless numbers entering every profile equation."""

    gamma_plus: float
    gamma_minus: float
    tau1: float
    tau2: float

    def __post_init__(self):
        if not (self.tau1 > 0 and self.tau2 > 0):
            raise InvalidSpecError(
                f"tau1, tau2 must be > 0, got ({self.tau1}, {self.tau2})"
            )


def derive_units(spec: MediumSpec) -> DerivedUnits:
    """Compute the basic time/length/field units from a medium spec.

    t0 = (eps_eg sqrt(alpha_ge n) / 2)^-1, l0 = c t0, and the intensity
    equivalent of E0^2 = eps_eg sqrt(n / alpha_ge).
    """
    omega_eg = spec.epsilon_eg / HBAR_EV_S            # rad/s
    coupling = math.sqrt(spec.alpha_ge * spec.n)      # dimensionless
    t0 = 1.0 / (0.5 * omega_eg * coupling)            # s
    l0 = C_M_S * t0                                   # m
    # Energy density eps_eg * sqrt(n / alpha_ge) in J/cm^3, times c for an
    # intensity in W/cm^2, then /100 for W/mm^2.
    u = spec.epsilon_eg * EV_J * math.sqrt(spec.n / spec.alpha_ge)
    e0_sq = u * C_CM_S / 100.0
    return DerivedUnits(t0=t0, l0=l0, E0_sq_W_mm2=e0_sq)


def dimensionless_params(spec: MediumSpec) -> DimensionlessParams:
    """Reduce a medium spec to (gamma_plus, gamma_minus, tau1, tau2)."""
    gp = (spec.alpha_ee + spec.alpha_gg) / (2.0 * spec.alpha_ge)
    gm = (spec.alpha_ee - spec.alpha_gg) / (2.0 * spec.alpha_ge)
    if spec.relaxation_unit == "s":
        t0 = derive_units(spec).t0
        tau1, tau2 = spec.T1 / t0, spec.T2 / t0
    else:
        tau1, tau2 = spec.T1, spec.T2
    return DimensionlessParams(gamma_plus=gp, gamma_minus=gm, tau1=tau1, tau2=tau2)


def preset_para_h2(
    n: float = 1e21,
    tau1: float = 1000.0,
    tau2: float = 10.0,
    use_quoted_gammas: bool = True,
) -> tuple[MediumSpec, DimensionlessParams]:
    """Para-H2 vibrational preset: alpha matrix, eps_eg = 0.52 eV.

    Returns the medium spec together with the dimensionless set used in the
    figure scenarios.  With ``use_quoted_gammas`` (default) the dimensionless
    set is the quoted (gamma_plus, gamma_minus) = (15, 0.64); otherwise the
    values derived from the alpha matrix (~15.22, ~0.725) are returned.
    Relaxation times are supplied by the caller, in units of t0.
    """
    spec = MediumSpec(
        alpha_ee=1.1e-23,
        alpha_gg=1.0e-23,
        alpha_ge=0.069e-23,
        epsilon_eg=0.52,
        n=n,
        T1=tau1,
        T2=tau2,
        relaxation_unit="t0",
    )
    if use_quoted_gammas:
        params = DimensionlessParams(
            gamma_plus=PARA_H2_GAMMA_PLUS_QUOTED,
            gamma_minus=PARA_H2_GAMMA_MINUS_QUOTED,
            tau1=tau1,
            tau2=tau2,
        )
    else:
        params = dimensionless_params(spec)
    return spec, params
