"""Finite-target bound states: linearized well and self-consistent iteration.

For a finite target the degenerate condensate amplitude psi = sqrt(R)
satisfies

    -psi'' + (1/2) W(xi) psi = 0,    W(xi) = 2 h^2 - (gp + gm r3(xi)),

i.e. a Schroedinger problem -psi'' + U psi = E psi with potential
U = -(gp + gm r3)/2 and energy E = -h^2.  A coherent excited region
(r3 ~ 0 plateau of width Delta, r3 -> -1 outside, transition width d)
yields a well of depth gm/2, so bound states exist only for gm > 0 and
their eigenvalues lie in the window

    h^2 in ((gp - gm)/2, gp/2).

The k-th level (ordered by increasing energy, i.e. decreasing h^2) has
k - 1 nodes.  Eigenvalues are found by Numerov shooting with node-count
bisection; wave functions are assembled from two one-sided sweeps so both
exponential tails are clean.

The self-consistent scheme closes the loop: solve the linear problem for
the current r3(xi), rebuild r3 from the field intensities through the
steady-state closed form, apply damped mixing, repeat.  Since the physical
normalization of the bound-state amplitude is an open parameter, the
iteration is parameterized by the peak intensity ``I_peak``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .bloch import r3_closed_form
from .profile import INTENSITY_FLOOR, ConservedPair, SingularityError
from .units import DimensionlessParams

__all__ = [
    "NoWellError",
    "InsufficientTail",
    "WellSpec",
    "PotentialProfile",
    "EigenResult",
    "SquareWellEstimate",
    "r3_ansatz",
    "solve_linear_bound_states",
    "count_bound_states",
    "scan_bound_count",
    "square_well_estimates",
    "r3_from_fields",
    "selfconsistent_iterate",
    "tail_slope",
    "numerov_nodes",
    "numerov_wavefunction",
    "eigen_window",
]

#: grid points of the standard eigenproblem discretization
DEFAULT_GRID_POINTS = 10000
#: fixed bisection depth; window_width / 2^48 is below float resolution
BISECTION_STEPS = 48


class NoWellError(ValueError):
    """gamma_minus <= 0: the linearized potential has no well."""


class InsufficientTail(ValueError):
    """Tail fit window has too few usable points."""


@dataclass(frozen=True)
class WellSpec:
    """Plateau width Delta and transition width d of the excited region."""

    Delta: float
    d: float
    params: DimensionlessParams

    def __post_init__(self):
        if not (self.Delta > 0 and self.d > 0):
            raise ValueError("Delta and d must be positive")
        if self.d >= self.Delta / 10.0:
            warnings.warn(
                f"transition width d={self.d} is not small against Delta={self.Delta}"
                " (expected d < Delta/10)",
                stacklevel=2,
            )

    @property
    def grid_halfwidth(self) -> float:
        return self.Delta + 20.0 * self.d + 10.0


@dataclass(frozen=True)
class PotentialProfile:
    """Population-difference profile r3(xi) defining the well."""

    xi: np.ndarray
    r3: np.ndarray
    params: DimensionlessParams

    def __post_init__(self):
        r3 = np.asarray(self.r3, dtype=float)
        if np.any(r3 > 1e-12) or np.any(r3 < -1.0 - 1e-12):
            raise ValueError("r3 must lie in [-1, 0]")

    def U(self) -> np.ndarray:
        """Schroedinger potential -(gp + gm r3)/2."""
        return -0.5 * (self.params.gamma_plus + self.params.gamma_minus * self.r3)

    def W(self, h_sq: float) -> np.ndarray:
        """W(xi) = 2 h^2 - (gp + gm r3(xi))."""
        return 2.0 * h_sq - (self.params.gamma_plus + self.params.gamma_minus * self.r3)


@dataclass
class EigenResult:
    """One converged bound level."""

    xi: np.ndarray
    psi_R: np.ndarray
    psi_L: np.ndarray
    h_sq: float
    nodes: int
    k: int
    converged: bool
    iterations: list[float] = field(default_factory=list)
    r3: np.ndarray | None = None
    diagnostics: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SquareWellEstimate:
    """Square-well bound-state count and size ladder.

    The count is ceil(sqrt(depth) Delta / pi) for two conventions of the
    effective well depth: the full two-level splitting gm, and the gm/2
    depth carried by the linearized amplitude equation.  Node-counting
    numerics agree with the gm/2 variant.
    """

    count_depth_gm: int
    count_depth_half_gm: int
    sizes: tuple[float, ...]
    h_sq_estimates: tuple[float, ...]


def eigen_window(params: DimensionlessParams) -> tuple[float, float]:
    """Bound-state window in h^2: ((gp - gm)/2, gp/2)."""
    if params.gamma_minus <= 0:
        raise NoWellError(
            f"bound states need gamma_minus > 0, got {params.gamma_minus}"
        )
    return ((params.gamma_plus - params.gamma_minus) / 2.0, params.gamma_plus / 2.0)


def r3_ansatz(well: WellSpec, n_grid: int = DEFAULT_GRID_POINTS) -> PotentialProfile:
    """Smooth plateau ansatz: r3 ~ 0 inside width Delta, -> -1 outside.

    r3(xi) = [arctan((xi + Delta/2)/d) - arctan((xi - Delta/2)/d)]/pi - 1.
    """
    X = well.grid_halfwidth
    xi = np.linspace(-X, X, n_grid)
    r3 = (np.arctan((xi + well.Delta / 2) / well.d)
          - np.arctan((xi - well.Delta / 2) / well.d)) / np.pi - 1.0
    return PotentialProfile(xi=xi, r3=r3, params=well.params)


# ---------------------------------------------------------------------------
# Numerov machinery
# ---------------------------------------------------------------------------

def numerov_nodes(E: float, U: np.ndarray, dx: float) -> int:
    """Node count of the left-to-right shooting solution at energy E."""
    f = E - U
    w = dx * dx / 12.0
    c = 1.0 + w * f
    n = len(U)
    p0 = 0.0
    p1 = 1e-12
    c0 = c[0]
    c1 = c[1]
    nodes = 0
    for i in range(1, n - 1):
        c2 = c[i + 1]
        p2 = ((12.0 - 10.0 * c1) * p1 - c0 * p0) / c2
        if (p2 < 0.0) != (p1 < 0.0) and p1 != 0.0:
            nodes += 1
        p0 = p1
        p1 = p2
        c0 = c1
        c1 = c2
        if abs(p1) > 1e250:
            p0 *= 1e-250
            p1 *= 1e-250
    return nodes


def _numerov_sweep(E: float, U: np.ndarray, dx: float) -> np.ndarray:
    """Shooting solution psi(xi) from the left boundary, with rescaling."""
    f = E - U
    w = dx * dx / 12.0
    c = 1.0 + w * f
    n = len(U)
    psi = np.empty(n)
    psi[0] = 0.0
    psi[1] = 1e-12
    p0, p1 = psi[0], psi[1]
    c0, c1 = c[0], c[1]
    for i in range(1, n - 1):
        c2 = c[i + 1]
        p2 = ((12.0 - 10.0 * c1) * p1 - c0 * p0) / c2
        psi[i + 1] = p2
        p0 = p1
        p1 = p2
        c0 = c1
        c1 = c2
        if abs(p1) > 1e250:
            psi[: i + 2] *= 1e-250
            p0 *= 1e-250
            p1 *= 1e-250
    return psi


def numerov_wavefunction(E: float, U: np.ndarray, dx: float) -> tuple[np.ndarray, int]:
    """Two-sided Numerov wave function, unit peak amplitude.

    Left and right sweeps are glued at the global maximum of the left
    solution so that both exponential tails are integrated in their stable
    (inward-growing) direction.
    """
    psi_l = _numerov_sweep(E, U, dx)
    psi_r = _numerov_sweep(E, U[::-1], dx)[::-1]
    im = int(np.argmax(np.abs(psi_l)))
    im = min(max(im, 1), len(U) - 2)
    if psi_r[im] == 0.0:
        im += 1
    psi = np.empty_like(psi_l)
    psi[: im + 1] = psi_l[: im + 1]
    psi[im:] = psi_r[im:] * (psi_l[im] / psi_r[im])
    psi /= np.max(np.abs(psi))
    interior = psi[1:-1]
    nodes = int(np.count_nonzero(np.sign(interior[:-1]) * np.sign(interior[1:]) < 0))
    return psi, nodes


def _solve_level(U: np.ndarray, dx: float, k: int, e_lo: float, e_hi: float,
                 n_base: int) -> tuple[float, np.ndarray, int]:
    """Bisect on node count for the k-th level above the window floor."""
    a, b = e_lo, e_hi
    target = n_base + k
    for _ in range(BISECTION_STEPS):
        m = 0.5 * (a + b)
        if numerov_nodes(m, U, dx) >= target:
            b = m
        else:
            a = m
    E = 0.5 * (a + b)
    psi, nodes = numerov_wavefunction(E, U, dx)
    return E, psi, nodes


def solve_linear_bound_states(
    pot: PotentialProfile,
    params: DimensionlessParams,
    max_levels: int = 10,
) -> list[EigenResult]:
    """All bound levels of -psi'' + U psi = -h^2 psi inside the window.

    Levels are labeled k = 1, 2, ... by increasing energy E = -h^2 (hence
    decreasing h^2) and carry k - 1 nodes.  Returns an empty list when the
    window holds no eigenvalue; raises NoWellError for gamma_minus <= 0.
    """
    lo_h2, hi_h2 = eigen_window(params)
    e_lo, e_hi = -hi_h2, -lo_h2
    xi = pot.xi
    dx = xi[1] - xi[0]
    U = pot.U()
    margin = 1e-9 * max(1.0, abs(e_lo))
    e_lo += margin
    e_hi -= margin
    n_base = numerov_nodes(e_lo, U, dx)
    n_top = numerov_nodes(e_hi, U, dx)
    n_levels = max(0, n_top - n_base)
    results = []
    for k in range(1, min(n_levels, max_levels) + 1):
        E, psi, nodes = _solve_level(U, dx, k, e_lo, e_hi, n_base)
        results.append(
            EigenResult(
                xi=xi.copy(),
                psi_R=psi.copy(),
                psi_L=psi.copy(),
                h_sq=-E,
                nodes=nodes,
                k=k,
                converged=True,
                r3=pot.r3.copy(),
                diagnostics={"window_h_sq": (lo_h2, hi_h2)},
            )
        )
    return results


def count_bound_states(pot: PotentialProfile, params: DimensionlessParams) -> int:
    """Bound-state count from node counts at the two window edges."""
    lo_h2, hi_h2 = eigen_window(params)
    dx = pot.xi[1] - pot.xi[0]
    U = pot.U()
    margin = 1e-9 * max(1.0, hi_h2)
    return max(0, numerov_nodes(-lo_h2 - margin, U, dx)
               - numerov_nodes(-hi_h2 + margin, U, dx))


def scan_bound_count(pot: PotentialProfile, params: DimensionlessParams,
                     n_scan: int = 400) -> int:
    """Bound-state count from a dense node-count scan across the window.

    Counts the total node-count increase over a uniform energy scan; by the
    oscillation theorem this equals the number of eigenvalues inside the
    window, independent of the bisection path used by the solver.
    """
    lo_h2, hi_h2 = eigen_window(params)
    dx = pot.xi[1] - pot.xi[0]
    U = pot.U()
    margin = 1e-9 * max(1.0, hi_h2)
    grid = np.linspace(-hi_h2 + margin, -lo_h2 - margin, n_scan)
    counts = [numerov_nodes(E, U, dx) for E in grid]
    total = 0
    for prev, cur in zip(counts[:-1], counts[1:]):
        if cur > prev:
            total += cur - prev
    return total


def square_well_estimates(params: DimensionlessParams, Delta: float) -> SquareWellEstimate:
    """Square-well count formulas and the soliton-size ladder (units of ct0)."""
    if params.gamma_minus <= 0:
        raise NoWellError("square-well estimates need gamma_minus > 0")
    if not Delta > 0:
        raise ValueError("Delta must be positive")
    gm, gp = params.gamma_minus, params.gamma_plus
    count_gm = int(np.ceil(np.sqrt(gm) * Delta / np.pi))
    count_half = int(np.ceil(np.sqrt(gm / 2.0) * Delta / np.pi))
    sizes = tuple(Delta / k for k in range(1, max(count_half, 1) + 1))
    h_sq = []
    for k in range(1, count_half + 1):
        est = gp / 2.0 - (k * np.pi / Delta) ** 2
        if est > (gp - gm) / 2.0:
            h_sq.append(est)
    return SquareWellEstimate(
        count_depth_gm=count_gm,
        count_depth_half_gm=count_half,
        sizes=sizes,
        h_sq_estimates=tuple(h_sq),
    )


def r3_from_fields(psi_R, psi_L, params: DimensionlessParams) -> np.ndarray:
    """Population difference from co-sampled field amplitude grids."""
    R = np.abs(np.asarray(psi_R)) ** 2
    L = np.abs(np.asarray(psi_L)) ** 2
    return np.asarray(r3_closed_form(R, L, params))


def _oscillating(signed_changes: list[float]) -> bool:
    if len(signed_changes) < 4:
        return False
    last = signed_changes[-4:]
    return all(last[i] * last[i + 1] < 0 for i in range(3))


def selfconsistent_iterate(
    well: WellSpec,
    hl: ConservedPair | None = None,
    max_iter: int = 50,
    damping: float = 0.5,
    tol: float = 1e-6,
    level: int = 1,
    I_peak: float = 0.01,
    n_grid: int = DEFAULT_GRID_POINTS,
) -> EigenResult:
    """Self-consistent nonlinear bound state at given peak intensity.

    Loop: solve the linear level-``level`` problem for the current r3(xi);
    rescale the wave function to peak intensity I_peak and set both field
    amplitudes equal to it; recompute r3 from the fields; mix with damping
    ``lam`` (halved automatically when the residual alternates in sign over
    four iterations); stop when the sup-norm r3 change drops below ``tol``.
    Non-convergence flags the result instead of raising.

    For l != 0 the effective potential gains the frozen-intensity term
    (l -+ h I_a)^2 / I_a^2 - h^2 built from the previous iterate; driving
    the intensity to the floor inside the well aborts with a located error.
    """
    if not (0.0 < damping <= 1.0):
        raise ValueError("damping must be in (0, 1]")
    params = well.params
    lo_h2, hi_h2 = eigen_window(params)
    if hl is None:
        hl = ConservedPair(h=0.0, l=0.0)
    pot = r3_ansatz(well, n_grid)
    xi = pot.xi
    dx = xi[1] - xi[0]
    r3 = pot.r3.copy()
    well_mask = np.abs(xi) < well.Delta / 2.0

    lam = damping
    history: list[float] = []
    signed: list[float] = []
    converged = False
    psi_R = psi_L = None
    h_sq = float("nan")
    h_sq_L = None
    nodes = level - 1
    margin = 1e-9 * max(1.0, hi_h2)
    e_lo, e_hi = -hi_h2 + margin, -lo_h2 - margin

    for _ in range(max_iter):
        base_U = -0.5 * (params.gamma_plus + params.gamma_minus * r3)
        if hl.l != 0.0 and psi_R is not None:
            I_R = np.maximum(np.abs(psi_R) ** 2, INTENSITY_FLOOR)
            I_L = np.maximum(np.abs(psi_L) ** 2, INTENSITY_FLOOR)
            if I_R[well_mask].min() <= INTENSITY_FLOOR or I_L[well_mask].min() <= INTENSITY_FLOOR:
                bad = xi[well_mask][int(np.argmin(I_R[well_mask]))]
                raise SingularityError(float(bad), "intensity hit the floor inside the well")
            h_prev = np.sqrt(max(h_sq, 0.0))
            U_R = base_U + (hl.l - h_prev * I_R) ** 2 / I_R ** 2 - h_prev ** 2
            U_L = base_U + (hl.l + h_prev * I_L) ** 2 / I_L ** 2 - h_prev ** 2
        else:
            U_R = U_L = base_U

        n_base = numerov_nodes(e_lo, U_R, dx)
        n_top = numerov_nodes(e_hi, U_R, dx)
        if n_top - n_base < level:
            # level left the window for the current potential: flag and stop
            history.append(float("nan"))
            break
        E, psi, nodes = _solve_level(U_R, dx, level, e_lo, e_hi, n_base)
        h_sq = -E
        psi_R = np.sqrt(I_peak) * psi
        if U_L is U_R:
            psi_L = psi_R.copy()
            h_sq_L = h_sq
        else:
            n_base_l = numerov_nodes(e_lo, U_L, dx)
            E_L, psi_l, _ = _solve_level(U_L, dx, level, e_lo, e_hi, n_base_l)
            psi_L = np.sqrt(I_peak) * psi_l
            h_sq_L = -E_L

        r3_new = r3_from_fields(psi_R, psi_L, params)
        delta = r3_new - r3
        i_max = int(np.argmax(np.abs(delta)))
        change = lam * float(np.abs(delta[i_max]))
        signed.append(float(delta[i_max]))
        history.append(change)
        r3 = (1.0 - lam) * r3 + lam * r3_new
        if change < tol:
            converged = True
            break
        if _oscillating(signed):
            lam = max(lam / 2.0, 1e-3)

    if psi_R is None:
        psi_R = np.zeros_like(xi)
        psi_L = np.zeros_like(xi)

    return EigenResult(
        xi=xi,
        psi_R=psi_R,
        psi_L=psi_L,
        h_sq=h_sq,
        nodes=nodes,
        k=level,
        converged=converged,
        iterations=history,
        r3=r3,
        diagnostics={
            "I_peak": I_peak,
            "damping_final": lam,
            "h_sq_L": h_sq_L,
            "l": hl.l,
            "window_h_sq": (lo_h2, hi_h2),
        },
    )


def tail_slope(result: EigenResult, well: WellSpec,
               margin_in: float = 3.0, margin_out: float = 4.0) -> tuple[float, float]:
    """Fitted log|psi| slope in the right tail vs the theory -sqrt(W_out/2).

    W_out = 2 h^2 - (gp - gm) is the outside value of W where r3 = -1.
    The fit window starts ``margin_in`` beyond the well edge and stops
    ``margin_out`` short of the grid boundary (hard-wall region).
    """
    params = well.params
    w_out = 2.0 * result.h_sq - (params.gamma_plus - params.gamma_minus)
    theory = -np.sqrt(max(w_out, 0.0) / 2.0)
    xi = result.xi
    psi = np.abs(result.psi_R) / np.max(np.abs(result.psi_R))
    mask = (xi > well.Delta / 2.0 + margin_in) & (xi < xi[-1] - margin_out) & (psi > 1e-14)
    if np.count_nonzero(mask) < 10:
        raise InsufficientTail("tail window too short for a slope fit")
    coef = np.polyfit(xi[mask], np.log(psi[mask]), 1)
    return float(coef[0]), float(theory)
