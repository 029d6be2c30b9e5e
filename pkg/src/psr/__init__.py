"""Solvers for static two-photon paired-superradiance soliton profiles.

Submodules:

* ``units``     physical medium specs, scale units, dimensionless parameters
* ``bloch``     steady-state Bloch vector and activity-factor integrand
* ``profile``   infinite-target profile ODEs, invariants, segmentation
* ``eigenwell`` finite-target bound states and self-consistent iteration
* ``master``    master-equation residuals certifying static solutions
* ``cli``       the ``psr`` command-line tool
"""

__version__ = "0.1.0"

from .units import (  # noqa: F401
    DerivedUnits,
    DimensionlessParams,
    InvalidSpecError,
    MediumSpec,
    derive_units,
    dimensionless_params,
    preset_para_h2,
)
from .bloch import (  # noqa: F401
    BlochVector,
    FieldPair,
    eta_integrand,
    steady_state_closed_form,
    steady_state_matrix,
)
from .profile import (  # noqa: F401
    ConservedPair,
    FieldState4,
    FluxState,
    ProfileGrid,
    ProfilePoint,
    SingularityError,
    SolitonSegment,
    conserved_quantities,
    detect_period,
    extract_solitons,
    four_component_initial,
    integrate_profile,
)
from .eigenwell import (  # noqa: F401
    EigenResult,
    WellSpec,
    r3_ansatz,
    selfconsistent_iterate,
    solve_linear_bound_states,
    square_well_estimates,
)
from .master import master_rhs, static_residual  # noqa: F401
