"""Well-balanced fifth-order finite-difference WENO solver for 1D blood flow.

The package solves the 1D arterial balance law

    A_t + Q_x = 0,
    Q_t + (Q^2/A + k/(3 rho sqrt(pi)) A^(3/2))_x
        = k A/(rho sqrt(pi)) (sqrt(A0))_x  [- C_f Q/A],

with a characteristic-wise fifth-order WENO reconstruction, a global
Lax-Friedrichs splitting applied to (A - A0, Q), a frozen-coefficient
source discretization that balances the flux gradient exactly on the rest
state u = 0, A = A0, and third-order SSP Runge-Kutta time stepping.
"""

from .boundaries import InflowDischarge, OutflowDampedWave, Transmissive, fill_ghosts
from .cases import (
    CASE_NAMES,
    CaseSpec,
    ConvergenceResult,
    ErrorReport,
    build_case,
    convergence_study,
    damping_wavenumbers,
    error_norms,
    exact_damping_wave,
    exact_wave_solution,
    observed_orders,
    reference_solution,
    restrict_to_coarse,
    AREA_SCALE,
    FLOW_SCALE,
    RADIUS_SCALE,
)
from .characteristics import (
    EigenSystem,
    GlobalAlphas,
    eigen_system,
    global_alphas,
    modified_lf_split,
    physical_flux,
    wave_speed,
)
from .errors import (
    BlowUpError,
    BloodflowError,
    ConfigurationError,
    StateError,
    UsageError,
)
from .integrator import (
    RhsEvaluation,
    RhsEvaluator,
    RunResult,
    compute_dt,
    rk3_step,
    run_until,
    semidiscrete_rhs,
)
from .mesh import (
    FieldPair,
    Grid,
    SchemeConfig,
    VesselGeometry,
    build_grid,
    conserved_from_primitive,
    primitive_from_conserved,
    sample_geometry,
)
from .source import (
    CENTRAL7,
    apply_frozen_operator,
    assemble_frozen_operator,
    central_derivative,
    friction_source,
    pointwise_source_nonwb,
)
from .weno import (
    DEFAULT_TABLES,
    EPS_WENO,
    ReconstructionResult,
    StencilTables,
    apply_rows,
    combined_rows,
    nonlinear_weights,
    reconstruct_minus,
    reconstruct_plus,
    smoothness_indicators,
)

__version__ = "0.1.0"
