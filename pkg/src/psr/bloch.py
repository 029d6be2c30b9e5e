"""Steady-state Bloch vector of the driven, dissipative two-level medium.

With counter-propagating dimensionless envelopes e_R, e_L the stationary
Bloch vector r = (r1, r2, r3) solves the linear system

    Rmat r = (0, 0, 1)^T,   Rmat = tau1 * A - diag(tau1/tau2, tau1/tau2, 1)

where A is the antisymmetric matrix built from

    a = 2 gamma_minus (R + L),  b = -4 Y,  c = 4 X,
    R = |e_R|^2,  L = |e_L|^2,  X = Re(e_R e_L),  Y = Im(e_R e_L).

The explicit inverse gives closed forms with denominator

    D = 1 + 4 gamma_minus^2 tau2^2 (R+L)^2 + 16 tau1 tau2 R L

(note the squared gamma_minus in both the r3 numerator and D; the matrix
solve fixes this convention).  ``steady_state_matrix`` keeps the direct
3x3 solve as the ground-truth oracle for the closed forms.

The activity-factor integrand is defined as d(eta)/d(xi) =
(r1^2 + r2^2)(R + L); expanding the closed forms gives prefactor
16 tau2^2.  An alternate normalization with prefactor 8 tau2^2 (half the
definitional value) also circulates for this quantity and is kept
available in ``eta_integrand_prefactor8`` so both can be reported.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .units import DimensionlessParams

__all__ = [
    "FieldPair",
    "BlochVector",
    "build_bloch_matrix",
    "steady_state_matrix",
    "steady_state_closed_form",
    "eta_integrand",
    "eta_integrand_prefactor8",
    "bloch_components",
    "bloch_components_matrix",
    "r3_closed_form",
    "eta_values",
]


@dataclass(frozen=True)
class FieldPair:
    """Dimensionless field envelopes (units of E0) at one point."""

    eR: complex
    eL: complex

    @classmethod
    def from_components(cls, e1: float, e2: float, e3: float, e4: float) -> "FieldPair":
        return cls(eR=complex(e1, e2), eL=complex(e3, e4))

    @property
    def components(self) -> tuple[float, float, float, float]:
        return (self.eR.real, self.eR.imag, self.eL.real, self.eL.imag)

    @property
    def R(self) -> float:
        return abs(self.eR) ** 2

    @property
    def L(self) -> float:
        return abs(self.eL) ** 2

    @property
    def X(self) -> float:
        return (self.eR * self.eL).real

    @property
    def Y(self) -> float:
        return (self.eR * self.eL).imag


@dataclass(frozen=True)
class BlochVector:
    """Normalized density-matrix components (r1, r2, r3)."""

    r1: float
    r2: float
    r3: float

    @property
    def rT(self) -> complex:
        return complex(self.r1, self.r2)

    @property
    def norm_sq(self) -> float:
        return self.r1 ** 2 + self.r2 ** 2 + self.r3 ** 2


def build_bloch_matrix(fields: FieldPair, params: DimensionlessParams) -> np.ndarray:
    """Assemble Rmat = tau1 * A - diag(tau1/tau2, tau1/tau2, 1)."""
    a = 2.0 * params.gamma_minus * (fields.R + fields.L)
    b = -4.0 * fields.Y
    c = 4.0 * fields.X
    t1 = params.tau1
    p = params.tau1 / params.tau2
    return np.array(
        [
            [-p, t1 * a, -t1 * b],
            [-t1 * a, -p, t1 * c],
            [t1 * b, -t1 * c, -1.0],
        ]
    )


def steady_state_matrix(fields: FieldPair, params: DimensionlessParams) -> BlochVector:
    """Ground-truth steady state by direct 3x3 linear solve."""
    rhs = np.array([0.0, 0.0, 1.0])
    r = np.linalg.solve(build_bloch_matrix(fields, params), rhs)
    return BlochVector(r1=r[0], r2=r[1], r3=r[2])


def bloch_components(eR, eL, params: DimensionlessParams):
    """Closed-form (r1, r2, r3); accepts scalars or numpy arrays.

    Returns the tuple (r1, r2, r3, D) with D the shared denominator.
    """
    eR = np.asarray(eR, dtype=complex)
    eL = np.asarray(eL, dtype=complex)
    R = np.abs(eR) ** 2
    L = np.abs(eL) ** 2
    prod = eR * eL
    X, Y = prod.real, prod.imag
    t1, t2, gm = params.tau1, params.tau2, params.gamma_minus
    kappa = 2.0 * gm * t2 * (R + L)
    one_k2 = 1.0 + kappa * kappa
    D = one_k2 + 16.0 * t1 * t2 * R * L
    r1 = -(4.0 * t2 / D) * (Y + 2.0 * t2 * gm * X * (R + L))
    r2 = -(4.0 * t2 / D) * (X - 2.0 * t2 * gm * Y * (R + L))
    r3 = -one_k2 / D
    return r1, r2, r3, D


def bloch_components_matrix(eR, eL, params: DimensionlessParams):
    """Batched 3x3 matrix-solve steady states (oracle for the closed form)."""
    eR = np.atleast_1d(np.asarray(eR, dtype=complex))
    eL = np.atleast_1d(np.asarray(eL, dtype=complex))
    R = np.abs(eR) ** 2
    L = np.abs(eL) ** 2
    prod = eR * eL
    a = 2.0 * params.gamma_minus * (R + L)
    b = -4.0 * prod.imag
    c = 4.0 * prod.real
    t1 = params.tau1
    p = params.tau1 / params.tau2
    n = len(R)
    m = np.zeros((n, 3, 3))
    m[:, 0, 0] = -p
    m[:, 0, 1] = t1 * a
    m[:, 0, 2] = -t1 * b
    m[:, 1, 0] = -t1 * a
    m[:, 1, 1] = -p
    m[:, 1, 2] = t1 * c
    m[:, 2, 0] = t1 * b
    m[:, 2, 1] = -t1 * c
    m[:, 2, 2] = -1.0
    rhs = np.zeros((n, 3, 1))
    rhs[:, 2, 0] = 1.0
    r = np.linalg.solve(m, rhs)[..., 0]
    return r[:, 0], r[:, 1], r[:, 2]


def steady_state_closed_form(fields: FieldPair, params: DimensionlessParams) -> BlochVector:
    """Closed-form steady state (gamma_minus^2 numerator convention)."""
    r1, r2, r3, _ = bloch_components(fields.eR, fields.eL, params)
    return BlochVector(r1=float(r1), r2=float(r2), r3=float(r3))


def r3_closed_form(R, L, params: DimensionlessParams):
    """Population difference from intensities alone (X, Y drop out of r3)."""
    t1, t2, gm = params.tau1, params.tau2, params.gamma_minus
    kappa = 2.0 * gm * t2 * (np.asarray(R) + np.asarray(L))
    one_k2 = 1.0 + kappa * kappa
    return -one_k2 / (one_k2 + 16.0 * t1 * t2 * np.asarray(R) * np.asarray(L))


def eta_values(eR, eL, params: DimensionlessParams):
    """Array-friendly activity integrand (r1^2 + r2^2)(R + L)."""
    eR = np.asarray(eR, dtype=complex)
    eL = np.asarray(eL, dtype=complex)
    r1, r2, _, _ = bloch_components(eR, eL, params)
    return (r1 ** 2 + r2 ** 2) * (np.abs(eR) ** 2 + np.abs(eL) ** 2)


def eta_integrand(fields: FieldPair, params: DimensionlessParams) -> float:
    """Activity-factor integrand d(eta)/d(xi) at one point (definitional form)."""
    return float(eta_values(fields.eR, fields.eL, params))


def eta_integrand_prefactor8(fields: FieldPair, params: DimensionlessParams) -> float:
    """Alternate closed form with prefactor 8 tau2^2 (diagnostic only).

    Direct expansion of (r1^2 + r2^2)(R + L) yields prefactor 16 tau2^2;
    this variant is half the definitional value and is kept so both
    normalizations can be reported side by side.
    """
    t1, t2, gm = params.tau1, params.tau2, params.gamma_minus
    R, L = fields.R, fields.L
    kappa2 = 4.0 * t2 ** 2 * gm ** 2 * (R + L) ** 2
    D = 1.0 + kappa2 + 16.0 * t1 * t2 * R * L
    return 8.0 * t2 ** 2 * R * L * (R + L) * (1.0 + kappa2) / D ** 2
