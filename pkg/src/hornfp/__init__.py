"""Numerical evaluation of the Horn function H2, the function F_P and the Gauss
2F1: power series, Euler-type integrals and Pochhammer double loops, with a
harness that cross-checks them against each other."""

from .errors import (
    ConstraintError,
    DegenerateError,
    DiscontinuityError,
    DomainError,
    GeometryError,
    HornFPError,
    NoConvergence,
    NonIntegrable,
    PoleError,
    SkippedError,
    UnsupportedRegion,
)
from .result import EvalResult
from .series import (
    FPParams,
    H2Params,
    appell_f1,
    appell_f2,
    appell_f3,
    fp_series,
    h2_series,
    hyp2f1,
    region_contains,
)
from .quadrature import integrate_path, integrate_unit_square, integrate_weighted_01
from .euler import fp_integral, h2_integral, h2_rewrite, h2_rewrite_target, hyp2f1_euler, hyp2f1_moebius
from .contour import (
    LoopSpec,
    beta_double_loop,
    build_double_loop,
    hyp2f1_loop,
    kita_h2_loop,
    olsson_I,
    shrink_case1,
)
from .identities import REGISTRY, check_identity, run_suite

__version__ = "0.1.0"
