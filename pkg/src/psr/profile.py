"""Static profile integration for the coupled two-photon field envelopes.

Two formulations of the same steady state are provided.

* ``four_component``: the exact second-order system -e'' = M e for the real
  4-vector e = (Re e_R, Im e_R, Re e_L, Im e_L), with

      M = 1/2 [[ (gp + gm r3) I2,  r1 s3 - r2 s1 ],
               [ r1 s3 - r2 s1,   (gp + gm r3) I2 ]]

  and the Bloch components evaluated from the closed-form steady state at
  the local fields.  M is real symmetric at every point, but the force
  -M e is not conservative.

* ``reduced``: the flux system in R = |e_R|^2, L = |e_L|^2,

      R'' = R'^2/(2R) - (gp + gm r3) R + 2 (l - h R)^2 / R + S
      L'' = L'^2/(2L) - (gp + gm r3) L + 2 (l + h L)^2 / L + S

  with constants (h, l) and the small term
  S = 8 tau2^2 gm R L (R + L) / D, which equals -(r1 X - r2 Y) exactly and
  is included by default.

The reduction rests on identifying the phase angular momenta
u = R phi_R', v = L phi_L' with l - hR and l + hL.  Along exact
four-component trajectories only the combination W' = v - u is strictly
conserved; u and v individually drift at the rate -2 tau2 R L / D, so the
two formulations agree only to O(tau2 R L / D) per unit length (they
coincide in the tau1 >> tau2, weak-overlap limit).  ``conserved_quantities``
measures both reconstructed invariants pointwise so the drift is visible.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import cumulative_trapezoid, solve_ivp

from .bloch import bloch_components, r3_closed_form
from .units import DimensionlessParams

__all__ = [
    "INTENSITY_FLOOR",
    "SingularityError",
    "InsufficientDataError",
    "ConservedPair",
    "FieldState4",
    "FluxState",
    "ProfilePoint",
    "ProfileGrid",
    "SolitonSegment",
    "PeriodEstimate",
    "rhs_four_component",
    "rhs_reduced",
    "small_term",
    "four_component_initial",
    "integrate_profile",
    "conserved_quantities",
    "extract_solitons",
    "detect_period",
    "reconstruct_fields",
]

#: hard positivity floor for the reduced 1/R, 1/L terms
INTENSITY_FLOOR = 1e-30


class SingularityError(RuntimeError):
    """Reduced-form integration hit the R, L positivity floor."""

    def __init__(self, xi: float | None, message: str | None = None):
        self.xi = xi
        super().__init__(message or f"intensity reached the positivity floor near xi={xi}")


class InsufficientDataError(ValueError):
    """Not enough structure in the grid for the requested estimate."""


@dataclass(frozen=True)
class ConservedPair:
    """Constants (h, l) of the reduced flux system."""

    h: float
    l: float


@dataclass(frozen=True)
class FieldState4:
    """Four real field components and their xi-derivatives."""

    e: np.ndarray
    de: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "e", np.asarray(self.e, dtype=float))
        object.__setattr__(self, "de", np.asarray(self.de, dtype=float))
        if self.e.shape != (4,) or self.de.shape != (4,):
            raise ValueError("FieldState4 needs shape-(4,) e and de")

    @property
    def R(self) -> float:
        return self.e[0] ** 2 + self.e[1] ** 2

    @property
    def L(self) -> float:
        return self.e[2] ** 2 + self.e[3] ** 2


@dataclass(frozen=True)
class FluxState:
    """Reduced state (R, L) and first derivatives."""

    R: float
    L: float
    dR: float
    dL: float


@dataclass(frozen=True)
class ProfilePoint:
    """One sampled point of a static solution."""

    xi: float
    state: FieldState4 | FluxState
    bloch: tuple[float, float, float] | None = None
    deta: float | None = None


@dataclass
class SolitonSegment:
    """Portion of a solution between adjacent joint stationary points."""

    xi_start: float
    xi_end: float
    type_tag: str  # "emitter" | "absorber" | "symmetric"
    eta: float
    note: str | None = None


@dataclass(frozen=True)
class PeriodEstimate:
    period: float
    cv: float
    n_maxima: int


@dataclass
class ProfileGrid:
    """Sampled static solution with per-point Bloch data and diagnostics."""

    xi: np.ndarray
    R: np.ndarray
    L: np.ndarray
    dR: np.ndarray
    dL: np.ndarray
    r1: np.ndarray
    r2: np.ndarray
    r3: np.ndarray
    deta: np.ndarray
    formulation: str
    params: DimensionlessParams
    hl: ConservedPair | None = None
    e: np.ndarray | None = None    # (n, 4) field components, four_component runs
    de: np.ndarray | None = None   # (n, 4) derivatives
    diagnostics: dict = field(default_factory=dict)
    flagged: bool = False
    dense: object = None           # scipy OdeSolution, when available

    def __len__(self) -> int:
        return len(self.xi)

    def points(self):
        """Iterate the grid as ProfilePoint records."""
        for i in range(len(self.xi)):
            if self.e is not None:
                state = FieldState4(self.e[i], self.de[i])
            else:
                state = FluxState(self.R[i], self.L[i], self.dR[i], self.dL[i])
            yield ProfilePoint(
                xi=float(self.xi[i]),
                state=state,
                bloch=(float(self.r1[i]), float(self.r2[i]), float(self.r3[i])),
                deta=float(self.deta[i]),
            )


# ---------------------------------------------------------------------------
# right-hand sides
# ---------------------------------------------------------------------------

def _rhs4(xi, y, params: DimensionlessParams):
    e1, e2, e3, e4, d1, d2, d3, d4 = y
    eR = complex(e1, e2)
    eL = complex(e3, e4)
    r1, r2, r3, _ = bloch_components(eR, eL, params)
    g = 0.5 * (params.gamma_plus + params.gamma_minus * r3)
    # e'' = -M e with the coupling block r1*s3 - r2*s1
    return [
        d1,
        d2,
        d3,
        d4,
        -(g * e1 + 0.5 * (r1 * e3 - r2 * e4)),
        -(g * e2 + 0.5 * (-r2 * e3 - r1 * e4)),
        -(0.5 * (r1 * e1 - r2 * e2) + g * e3),
        -(0.5 * (-r2 * e1 - r1 * e2) + g * e4),
    ]


def small_term(R, L, params: DimensionlessParams):
    """S = 8 tau2^2 gm R L (R+L) / D; equals -(r1 X - r2 Y) identically."""
    t1, t2, gm = params.tau1, params.tau2, params.gamma_minus
    s = np.asarray(R) + np.asarray(L)
    D = 1.0 + 4.0 * gm ** 2 * t2 ** 2 * s ** 2 + 16.0 * t1 * t2 * np.asarray(R) * np.asarray(L)
    return 8.0 * t2 ** 2 * gm * np.asarray(R) * np.asarray(L) * s / D


def _rhs_reduced(xi, y, hl: ConservedPair, params: DimensionlessParams, include_small_term: bool):
    R, dR, L, dL = y
    if R <= INTENSITY_FLOOR or L <= INTENSITY_FLOOR:
        raise SingularityError(xi)
    t1, t2, gm, gp = params.tau1, params.tau2, params.gamma_minus, params.gamma_plus
    s = R + L
    kappa2 = 4.0 * gm ** 2 * t2 ** 2 * s ** 2
    D = 1.0 + kappa2 + 16.0 * t1 * t2 * R * L
    r3 = -(1.0 + kappa2) / D
    g = gp + gm * r3
    S = 8.0 * t2 ** 2 * gm * R * L * s / D if include_small_term else 0.0
    h, l = hl.h, hl.l
    ddR = dR * dR / (2.0 * R) - g * R + 2.0 * (l - h * R) ** 2 / R + S
    ddL = dL * dL / (2.0 * L) - g * L + 2.0 * (l + h * L) ** 2 / L + S
    return [dR, ddR, dL, ddL]


def rhs_four_component(state: FieldState4, params: DimensionlessParams) -> FieldState4:
    """Derivative of a FieldState4 under -e'' = M e."""
    out = _rhs4(0.0, np.concatenate([state.e, state.de]), params)
    return FieldState4(e=np.array(out[:4]), de=np.array(out[4:]))


def rhs_reduced(
    state: FluxState,
    hl: ConservedPair,
    params: DimensionlessParams,
    include_small_term: bool = True,
    xi: float = 0.0,
) -> FluxState:
    """Derivative of a FluxState under the reduced flux equations."""
    out = _rhs_reduced(xi, (state.R, state.dR, state.L, state.dL), hl, params, include_small_term)
    return FluxState(R=out[0], dR=out[1], L=out[2], dL=out[3])


def four_component_initial(R0: float, L0: float, hl: ConservedPair) -> FieldState4:
    """Center-of-target field state matching (R0, L0, R'=L'=0) and (h, l).

    Phases are chosen zero at the center; the phase derivatives follow from
    R phi_R' = l - h R and L phi_L' = l + h L.  Both intensities must be
    positive unless the corresponding angular momentum vanishes.
    """
    h, l = hl.h, hl.l
    if R0 <= 0.0 or L0 <= 0.0:
        if l != 0.0:
            raise ValueError("zero initial intensity requires l = 0")
        e = np.array([np.sqrt(max(R0, 0.0)), 0.0, np.sqrt(max(L0, 0.0)), 0.0])
        de = np.array([0.0, -h * e[0], 0.0, h * e[2]])
        return FieldState4(e=e, de=de)
    e = np.array([np.sqrt(R0), 0.0, np.sqrt(L0), 0.0])
    de = np.array([0.0, (l - h * R0) / np.sqrt(R0), 0.0, (l + h * L0) / np.sqrt(L0)])
    return FieldState4(e=e, de=de)


# ---------------------------------------------------------------------------
# integration
# ---------------------------------------------------------------------------

def _integrate_leg(rhs, y0, xi0, xi1, rtol, atol, events=None):
    if xi1 == xi0:
        return None
    sol = solve_ivp(
        rhs,
        (xi0, xi1),
        y0,
        method="DOP853",
        rtol=rtol,
        atol=atol,
        dense_output=True,
        events=events,
    )
    return sol


def _invariants_from_y(y):
    """Pointwise (R, L, W', XY'-YX') from stacked 4-component samples."""
    e1, e2, e3, e4, d1, d2, d3, d4 = y
    R = e1 ** 2 + e2 ** 2
    L = e3 ** 2 + e4 ** 2
    X = e1 * e3 - e2 * e4
    Y = e1 * e4 + e2 * e3
    dX = d1 * e3 + e1 * d3 - d2 * e4 - e2 * d4
    dY = d1 * e4 + e1 * d4 + d2 * e3 + e2 * d3
    wp = d1 * e2 - d2 * e1 - d3 * e4 + d4 * e3
    ang = X * dY - Y * dX
    return R, L, wp, ang


def integrate_profile(
    initial: ProfilePoint,
    span: tuple[float, float],
    params: DimensionlessParams,
    formulation: str = "reduced",
    tol: float = 1e-9,
    hl: ConservedPair | None = None,
    atol: float | None = None,
    n_points: int = 2001,
    include_small_term: bool = True,
    drift_tol: float = 1e-6,
) -> ProfileGrid:
    """Integrate a static profile over ``span`` from center boundary data.

    ``initial.xi`` must lie inside ``span``; when it is interior the two legs
    are integrated separately and concatenated.  Local error is controlled by
    relative tolerance ``tol`` (absolute tolerance defaults to tol * 1e-3).
    The reduced formulation needs ``hl`` and raises SingularityError with the
    offending xi when an intensity reaches the positivity floor.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if formulation not in ("four_component", "reduced"):
        raise ValueError(f"unknown formulation {formulation!r}")
    lo, hi = float(span[0]), float(span[1])
    xi_c = float(initial.xi)
    if not (lo <= xi_c <= hi) or lo == hi:
        raise ValueError(f"initial xi={xi_c} must lie inside span ({lo}, {hi})")
    atol = tol * 1e-3 if atol is None else atol

    if formulation == "reduced":
        if hl is None:
            raise ValueError("reduced formulation requires the conserved pair hl")
        st = initial.state
        if isinstance(st, FieldState4):
            raise ValueError("reduced formulation expects a FluxState initial condition")
        if st.R <= INTENSITY_FLOOR or st.L <= INTENSITY_FLOOR:
            raise SingularityError(xi_c, "initial intensities must exceed the floor")
        y0 = [st.R, st.dR, st.L, st.dL]

        def rhs(x, y):
            return _rhs_reduced(x, y, hl, params, include_small_term)

        def ev_r(x, y):
            return y[0] - INTENSITY_FLOOR

        def ev_l(x, y):
            return y[2] - INTENSITY_FLOOR

        ev_r.terminal = True
        ev_l.terminal = True
        events = (ev_r, ev_l)
    else:
        st = initial.state
        if isinstance(st, FluxState):
            if hl is None:
                raise ValueError("building 4-component data from (R, L) needs hl")
            st = four_component_initial(st.R, st.L, hl)
        y0 = np.concatenate([st.e, st.de])

        def rhs(x, y):
            return _rhs4(x, y, params)

        events = None

    legs = []
    try:
        fwd = _integrate_leg(rhs, y0, xi_c, hi, tol, atol, events)
        bwd = _integrate_leg(rhs, y0, xi_c, lo, tol, atol, events)
    except SingularityError:
        raise
    for sol, sign in ((bwd, -1), (fwd, +1)):
        if sol is None:
            continue
        if sol.status == -1 or not np.all(np.isfinite(sol.y[:, -1])):
            raise SingularityError(float(sol.t[-1]), f"integration failed near xi={sol.t[-1]}: {sol.message}")
        if sol.status == 1:  # terminal floor event
            xs = [t[0] for t in sol.t_events if len(t)]
            raise SingularityError(float(min(xs)) if sign > 0 else float(max(xs)))
        legs.append(sol)

    n_steps = sum(len(s.t) for s in legs)

    def evaluate(xi_arr):
        out = np.empty((len(y0), len(xi_arr)))
        for s in legs:
            a, b = min(s.t[0], s.t[-1]), max(s.t[0], s.t[-1])
            m = (xi_arr >= a) & (xi_arr <= b)
            if np.any(m):
                out[:, m] = s.sol(xi_arr[m])
        return out

    xi = np.linspace(lo, hi, n_points)
    y = evaluate(xi)

    diagnostics = {
        "formulation": formulation,
        "rtol": tol,
        "atol": atol,
        "n_steps": int(n_steps),
        "include_small_term": bool(include_small_term),
    }
    flagged = False

    if formulation == "reduced":
        R, dR, L, dL = y
        r3 = r3_closed_form(R, L, params)
        eR, eL = _fields_from_flux(xi, R, L, hl, xi_c)
        r1, r2, _, _ = bloch_components(eR, eL, params)
        deta = (r1 ** 2 + r2 ** 2) * (R + L)
        grid = ProfileGrid(
            xi=xi, R=R, L=L, dR=dR, dL=dL, r1=r1, r2=r2, r3=np.asarray(r3),
            deta=deta, formulation=formulation, params=params, hl=hl,
            diagnostics=diagnostics, dense=evaluate,
        )
        diagnostics["h"] = hl.h
        diagnostics["l"] = hl.l
    else:
        e = y[:4].T.copy()
        de = y[4:].T.copy()
        R, L, wp, ang = _invariants_from_y(y)
        dR = 2.0 * (y[0] * y[4] + y[1] * y[5])
        dL = 2.0 * (y[2] * y[6] + y[3] * y[7])
        eR = y[0] + 1j * y[1]
        eL = y[2] + 1j * y[3]
        r1, r2, r3, _ = bloch_components(eR, eL, params)
        deta = (r1 ** 2 + r2 ** 2) * (R + L)
        s = R + L
        ok = s > INTENSITY_FLOOR
        h_pt = np.where(ok, wp / np.where(ok, s, 1.0), np.nan)
        l_pt = np.where(ok, ang / np.where(ok, s, 1.0), np.nan)
        h_mean = float(np.nanmean(h_pt))
        l_mean = float(np.nanmean(l_pt))
        diagnostics.update(
            h_mean=h_mean,
            h_max_dev=float(np.nanmax(np.abs(h_pt - h_mean))) if np.any(ok) else float("nan"),
            l_mean=l_mean,
            l_max_dev=float(np.nanmax(np.abs(l_pt - l_mean))) if np.any(ok) else float("nan"),
            wprime_spread=float(wp.max() - wp.min()),
            n_points_excluded=int(np.count_nonzero(~ok)),
        )
        if np.any(ok) and max(diagnostics["h_max_dev"], diagnostics["l_max_dev"]) > drift_tol:
            flagged = True
            diagnostics["flag_reason"] = (
                "reconstructed (h, l) drift exceeds drift_tol; the pair is "
                "not an exact invariant of the four-component system"
            )
        grid = ProfileGrid(
            xi=xi, R=R, L=L, dR=dR, dL=dL, r1=r1, r2=r2, r3=r3, deta=deta,
            formulation=formulation, params=params,
            hl=ConservedPair(h=h_mean, l=l_mean),
            e=e, de=de, diagnostics=diagnostics, flagged=flagged, dense=evaluate,
        )
    grid.flagged = flagged
    return grid


def _fields_from_flux(xi, R, L, hl: ConservedPair, xi_center: float):
    """Complex envelopes for a reduced run, phases zero at the center.

    Integrates phi_R' = (l - hR)/R and phi_L' = (l + hL)/L on the sample
    grid; used for Bloch coherences, CSV output and master-equation checks.
    """
    h, l = hl.h, hl.l
    phi_r = cumulative_trapezoid((l - h * R) / R, xi, initial=0.0)
    phi_l = cumulative_trapezoid((l + h * L) / L, xi, initial=0.0)
    ic = int(np.argmin(np.abs(xi - xi_center)))
    phi_r -= phi_r[ic]
    phi_l -= phi_l[ic]
    return np.sqrt(R) * np.exp(1j * phi_r), np.sqrt(L) * np.exp(1j * phi_l)


def reconstruct_fields(grid: ProfileGrid) -> tuple[np.ndarray, np.ndarray]:
    """Complex envelopes (e_R, e_L) on the grid, for either formulation."""
    if grid.e is not None:
        return grid.e[:, 0] + 1j * grid.e[:, 1], grid.e[:, 2] + 1j * grid.e[:, 3]
    if grid.hl is None:
        raise ValueError("reduced grid without (h, l); cannot reconstruct phases")
    xi_c = grid.diagnostics.get("xi_center", grid.xi[0])
    return _fields_from_flux(grid.xi, grid.R, grid.L, grid.hl, xi_c)


# ---------------------------------------------------------------------------
# invariants, segmentation, period
# ---------------------------------------------------------------------------

def invariant_series(grid: ProfileGrid) -> tuple[np.ndarray, np.ndarray]:
    """Pointwise (h, l) columns for output: reconstructed for 4-component
    runs, the constant input pair for reduced runs."""
    if grid.e is not None and grid.de is not None:
        y = np.vstack([grid.e.T, grid.de.T])
        R, L, wp, ang = _invariants_from_y(y)
        s = np.where(R + L > INTENSITY_FLOOR, R + L, np.nan)
        return wp / s, ang / s
    if grid.hl is None:
        raise ValueError("reduced grid without (h, l)")
    n = len(grid.xi)
    return np.full(n, grid.hl.h), np.full(n, grid.hl.l)


def conserved_quantities(grid: ProfileGrid) -> tuple[ConservedPair, dict]:
    """Pointwise reconstructed (h, l) along a 4-component run, with drift report.

    h(xi) = W'/(R+L) and l(xi) = (X Y' - Y X')/(R+L).  Points with
    R + L below the intensity floor are excluded and counted.  The report
    also carries the spread of W' itself, which is an exact invariant.
    """
    if grid.e is None or grid.de is None:
        raise ValueError("conserved_quantities needs a four_component grid")
    y = np.vstack([grid.e.T, grid.de.T])
    R, L, wp, ang = _invariants_from_y(y)
    s = R + L
    ok = s > INTENSITY_FLOOR
    report = {"n_excluded": int(np.count_nonzero(~ok))}
    if not np.any(ok):
        warnings.warn("all points below intensity floor; (h, l) undefined")
        report.update(h_mean=float("nan"), l_mean=float("nan"),
                      h_max_dev=float("nan"), l_max_dev=float("nan"),
                      wprime_mean=float("nan"), wprime_spread=float("nan"))
        return ConservedPair(float("nan"), float("nan")), report
    h_pt = wp[ok] / s[ok]
    l_pt = ang[ok] / s[ok]
    h_mean, l_mean = float(np.mean(h_pt)), float(np.mean(l_pt))
    report.update(
        h_mean=h_mean,
        l_mean=l_mean,
        h_max_dev=float(np.max(np.abs(h_pt - h_mean))),
        l_max_dev=float(np.max(np.abs(l_pt - l_mean))),
        wprime_mean=float(np.mean(wp[ok])),
        wprime_spread=float(np.max(wp[ok]) - np.min(wp[ok])),
    )
    return ConservedPair(h=h_mean, l=l_mean), report


def _refine_zero(f, a, b, iters=80):
    fa = f(a)
    for _ in range(iters):
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0.0:
            return m
        if (fm < 0.0) == (fa < 0.0):
            a, fa = m, fm
        else:
            b = m
        if b - a < 1e-14 * max(1.0, abs(a)):
            break
    return 0.5 * (a + b)


def _derivative_zeros(grid: ProfileGrid, which: str):
    """Refined zeros of dR or dL using the dense solution when available."""
    d = grid.dR if which == "R" else grid.dL
    xi = grid.xi

    if grid.dense is not None and grid.e is None:
        comp = {"R": 1, "L": 3}[which]

        def deriv(x):
            return float(grid.dense(np.array([x]))[comp, 0])
    elif grid.dense is not None:

        def deriv(x):
            y = grid.dense(np.array([x]))[:, 0]
            if which == "R":
                return 2.0 * (y[0] * y[4] + y[1] * y[5])
            return 2.0 * (y[2] * y[6] + y[3] * y[7])
    else:

        def deriv(x):
            return float(np.interp(x, xi, d))

    zeros = []
    sgn = np.sign(d)
    for i in np.nonzero(sgn[:-1] * sgn[1:] < 0)[0]:
        zeros.append(_refine_zero(deriv, float(xi[i]), float(xi[i + 1])))
    # grid points that are exact zeros (e.g. the center boundary condition)
    for i in np.nonzero(d == 0.0)[0]:
        zeros.append(float(xi[i]))
    return np.array(sorted(zeros))


def extract_solitons(grid: ProfileGrid, tol: float = 0.25,
                     symmetric_tol: float = 0.05) -> list[SolitonSegment]:
    """Split a profile at joint stationary points (R' = 0 and L' = 0).

    Each derivative zero is refined by bisection; a joint stationary point
    is a pair of R' and L' zeros lying within ``tol`` times the median
    zero spacing of each other (in a drifting chain the two families
    coincide only approximately; exactly co-located zeros always qualify).
    Segments are tagged ``emitter`` when R rises across the segment,
    ``absorber`` when it falls (L rises), and ``symmetric`` when R and L
    coincide to ``symmetric_tol`` of the field scale, the degenerate
    co-moving case.  Per-segment eta integrates d(eta)/d(xi).  A constant
    profile yields one degenerate flagged segment; no stationary points
    yields an empty list with a warning.
    """
    scale_R = float(np.max(np.abs(grid.dR)))
    scale_L = float(np.max(np.abs(grid.dL)))
    field_scale = float(max(np.max(grid.R), np.max(grid.L)))
    if max(scale_R, scale_L) <= 1e-13 * max(field_scale, 1.0):
        warnings.warn("constant profile; returning one degenerate segment")
        return [SolitonSegment(
            xi_start=float(grid.xi[0]), xi_end=float(grid.xi[-1]),
            type_tag="symmetric", eta=float(np.trapezoid(grid.deta, grid.xi)),
            note="degenerate-constant",
        )]

    zr = _derivative_zeros(grid, "R")
    zl = _derivative_zeros(grid, "L")
    if len(zr) == 0 or len(zl) == 0:
        warnings.warn("no stationary points found")
        return []

    spacings = np.diff(zr) if len(zr) > 1 else np.diff(zl)
    window = tol * float(np.median(spacings)) if len(spacings) else tol

    joint = []
    for x in zr:
        j = int(np.argmin(np.abs(zl - x)))
        if abs(zl[j] - x) <= window:
            joint.append(0.5 * (x + zl[j]))
    joint = np.array(sorted(joint))
    if len(joint) < 2:
        warnings.warn("fewer than two joint stationary points found")
        return []
    dedup = [joint[0]]
    min_sep = max(window, 2.0 * (grid.xi[1] - grid.xi[0]))
    for x in joint[1:]:
        if x - dedup[-1] > min_sep:
            dedup.append(x)

    def interp(arr, x):
        return float(np.interp(x, grid.xi, arr))

    segments = []
    for a, b in zip(dedup[:-1], dedup[1:]):
        m = (grid.xi >= a) & (grid.xi <= b)
        if np.count_nonzero(m) < 3:
            continue
        if np.max(np.abs(grid.R[m] - grid.L[m])) <= symmetric_tol * max(field_scale, 1e-300):
            tag = "symmetric"
        elif interp(grid.R, b) > interp(grid.R, a):
            tag = "emitter"
        else:
            tag = "absorber"
        eta = float(np.trapezoid(grid.deta[m], grid.xi[m]))
        segments.append(SolitonSegment(xi_start=float(a), xi_end=float(b),
                                       type_tag=tag, eta=eta))
    return segments


def detect_period(grid: ProfileGrid) -> PeriodEstimate:
    """Median spacing of successive R maxima and its coefficient of variation."""
    zeros = _derivative_zeros(grid, "R")
    maxima = []
    dxi = grid.xi[1] - grid.xi[0]
    for x in zeros:
        left = float(np.interp(x - 0.5 * dxi, grid.xi, grid.R))
        right = float(np.interp(x + 0.5 * dxi, grid.xi, grid.R))
        center = float(np.interp(x, grid.xi, grid.R))
        if center >= left and center >= right:
            maxima.append(x)
    # drop maxima at the very edges of the window
    maxima = [x for x in maxima if grid.xi[0] + 0.5 * dxi < x < grid.xi[-1] - 0.5 * dxi]
    if len(maxima) < 3:
        raise InsufficientDataError(
            f"period detection needs >= 3 interior maxima of R, found {len(maxima)}"
        )
    spac = np.diff(np.array(maxima))
    period = float(np.median(spac))
    cv = float(np.std(spac) / np.mean(spac))
    return PeriodEstimate(period=period, cv=cv, n_maxima=len(maxima))
