"""Named scenario presets, including the four figure-grade parameter sets.

Each preset is a flat mapping of dotted keys, the same shape a config file
section produces, so file sections and --override flags can be layered on
top.  Figure presets carry the caption parameters verbatim.
"""

from __future__ import annotations

__all__ = ["PRESETS", "preset_names"]

_PARA_H2 = {
    "params.gamma_plus": "15",
    "params.gamma_minus": "0.64",
    "params.tau1": "1000",
    "params.tau2": "10",
}

PRESETS: dict[str, dict[str, str]] = {
    # Alternating emitter/absorber chain.
    "fig1": {
        "mode": "profile",
        "formulation": "reduced",
        **_PARA_H2,
        "boundary.R0": "1e-4",
        "boundary.L0": "1",
        "invariants.h": "-1",
        "invariants.l": "0.01",
        "span.min": "0",
        "span.max": "30",
        "tol": "1e-9",
        "n_points": "3001",
    },
    # Strongly interacting condensate; l = 0 lets the R-field cross zero,
    # which is singular in flux coordinates, so the exact four-component
    # form is the default here.
    "fig3": {
        "mode": "profile",
        "formulation": "four_component",
        **_PARA_H2,
        "boundary.R0": "0.01",
        "boundary.L0": "0.005",
        "invariants.h": "-1.8",
        "invariants.l": "0",
        "span.min": "0",
        "span.max": "20",
        "tol": "1e-9",
        "n_points": "2001",
    },
    # Degenerate R = L condensate.
    "fig4": {
        "mode": "profile",
        "formulation": "reduced",
        **_PARA_H2,
        "boundary.R0": "1",
        "boundary.L0": "1",
        "invariants.h": "-1",
        "invariants.l": "0.001",
        "span.min": "0",
        "span.max": "20",
        "tol": "1e-9",
        "n_points": "2001",
    },
    # Large activity factor, order-unity d(eta)/d(xi).
    "fig6": {
        "mode": "profile",
        "formulation": "reduced",
        "params.gamma_plus": "15",
        "params.gamma_minus": "0.64",
        "params.tau1": "10",
        "params.tau2": "10",
        "boundary.R0": "0.05",
        "boundary.L0": "1",
        "invariants.h": "-1",
        "invariants.l": "1",
        "span.min": "0",
        "span.max": "20",
        "tol": "1e-9",
        "n_points": "2001",
    },
    # Self-consistent condensate in a Delta = 10 well.
    "eigen-delta10": {
        "mode": "eigen",
        **_PARA_H2,
        "well.Delta": "10",
        "well.d": "0.5",
        "well.I_peak": "0.01",
        "eigen.max_levels": "6",
        "eigen.damping": "0.5",
        "eigen.tol": "1e-6",
        "eigen.max_iter": "50",
        "eigen.level": "1",
        "eigen.l": "0",
    },
    # Steady-state Bloch response over a grid of real field amplitudes.
    "bloch-grid": {
        "mode": "bloch-scan",
        **_PARA_H2,
        "scan.e_min": "0",
        "scan.e_max": "2",
        "scan.steps": "41",
    },
    # Para-H2 unit system at default density.
    "para-h2": {
        "mode": "units",
        "medium.alpha_ee": "1.1e-23",
        "medium.alpha_gg": "1.0e-23",
        "medium.alpha_ge": "0.069e-23",
        "medium.epsilon_eg": "0.52",
        "medium.n": "1e21",
        "medium.tau1": "1000",
        "medium.tau2": "10",
    },
}


def preset_names() -> tuple[str, ...]:
    return tuple(sorted(PRESETS))
