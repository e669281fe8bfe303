"""Exact numerical stability data on Weierstrass elliptic surfaces."""

from .charge import (
    Admissibility,
    ChargeExpr,
    CurveCharge,
    admissibility,
    build_charge,
    curve_charge,
    curve_v,
    substitute_curve,
    twist_identity_residual,
)
from .exact import (
    BiPoly,
    LaurentPoly,
    RootInterval,
    Sign,
    ZeroPolynomialError,
    dominance_bound,
    laurent_sign_at_zero_plus,
    rational_arith,
    sturm_isolate_roots,
)
from .fourier_mukai import phi, phi_hat, phi_of_shifted_sheaf_charge_data, shift
from .phase import (
    InadmissibleChargeError,
    LimitPhase,
    Ordering,
    PhaseTag,
    PhaseVerdict,
    classify_limit_phase,
    compare_phases,
    theorem_A_scan,
)
from .surface import (
    ChernClass,
    HNProfile,
    ParameterError,
    SurfaceParams,
    check_Fl_conditions,
    check_Tl_conditions,
    mu_f,
    mu_theta_mf,
    twisted_ch1_pair,
    twisted_slope,
)
from .walls import Box, WallReport, find_walls, wall_grid_scan

__version__ = "0.1.0"
