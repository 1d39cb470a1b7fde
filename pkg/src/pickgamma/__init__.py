"""Log-gamma on the cut plane, gamma-quotient Pick representations and a0."""

from .kernel import (
    CONSTANTS,
    BoundaryValue,
    CutPlaneError,
    CutPoint,
    binet_mu,
    boundary_log_abs_gamma,
    log_gamma,
    principal_log,
)
from .densities import (
    DensityFamily,
    DensitySample,
    Kind,
    SingularDensityError,
    density_d,
    density_invlog,
    density_rho,
    density_tau,
    density_values,
    numerator_N,
    positivity_scan,
)
from .representations import (
    PoleError,
    PoleInfo,
    QuadratureError,
    QuadraturePlan,
    RepComparison,
    F_direct,
    F_rep,
    F_values,
    G_direct,
    G_rep,
    integrate_density,
    invlog_rep,
    logf_direct,
    logf_rep,
    tail_correction,
    z_over_loggamma,
    z_over_loggamma_rep,
)
from .a0 import A0Report, KMinimum, find_a0, golden_section, minimize_rho, rho_ks, rho_ks_direct
from .moments import (
    MomentReport,
    cm_function_check,
    cm_sequence_check,
    f_of,
    hankel_psd_check,
    log_convexity_check,
    log_f,
    moment_sequence,
    unit_ball_volume,
)
from .verify import (
    BoundaryLimitResult,
    ScanReport,
    boundary_limit_check,
    derivative_sign_check,
    identity_suite,
    pick_scan,
)

__version__ = "0.1.0"
