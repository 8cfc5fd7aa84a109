"""Sharp constants for a Wirtinger-type inequality with an r-mean constraint.

For 2-periodic u on (-1, 1) with int |u|^{r-2} u dx = 0, the smallest
constant alpha(p, q, r) with ||u'||_p >= alpha ||u||_q is computed by
reducing the variational problem to a one-dimensional minimization over
the profile asymmetry m in (0, 1], locating interior critical points of
the reduced objective K(m) subject to F(m) = 0, and comparing with the
symmetric endpoint value K(1) = alpha(p, q, q).
"""

from .core import (
    INFINITY,
    MDiagnostics,
    Params,
    F_of_m,
    K_of_m,
    alpha_closed_form,
    alpha_p_infinity,
    alpha_q1_r2,
    alpha_q_infinity_r2,
    f_prime_at_1,
    g_family_integral,
    k_of_m_with_error,
    k_prime_of_m,
    one_minus_r_of_m,
    r_of_m,
)
from .errors import ConvergenceError, ParamsError
from .oracle import OracleResult, minimize_direct
from .profile import Profile, ProfileReport, build_profile, diagnostics_of_m, verify_profile
from .quadrature import QuadConfig, QuadResult, integrate
from .rootfind import RootSet, find_roots
from .solver import (
    REGIME_BAND,
    REGIME_EQUALITY,
    REGIME_STRICT,
    AlphaResult,
    BreakpointScan,
    best_constant,
    breakpoint_scan,
    classify_regime,
    rescale,
)

__version__ = "0.1.0"

__all__ = [
    "INFINITY",
    "AlphaResult",
    "BreakpointScan",
    "ConvergenceError",
    "F_of_m",
    "K_of_m",
    "MDiagnostics",
    "OracleResult",
    "Params",
    "ParamsError",
    "Profile",
    "ProfileReport",
    "QuadConfig",
    "QuadResult",
    "REGIME_BAND",
    "REGIME_EQUALITY",
    "REGIME_STRICT",
    "RootSet",
    "alpha_closed_form",
    "alpha_p_infinity",
    "alpha_q1_r2",
    "alpha_q_infinity_r2",
    "best_constant",
    "breakpoint_scan",
    "build_profile",
    "classify_regime",
    "diagnostics_of_m",
    "f_prime_at_1",
    "find_roots",
    "g_family_integral",
    "integrate",
    "k_of_m_with_error",
    "k_prime_of_m",
    "minimize_direct",
    "one_minus_r_of_m",
    "r_of_m",
    "rescale",
    "verify_profile",
    "__version__",
]
