"""Strip-kernel subordination toolkit: truncated series, certified members of the
strip classes, coefficient bounds and a randomized bound prober."""

from .bounds import Variant, bound_bg, bound_sg, bound_starlike_strip, limit_bound
from .cauchy_euler import ode_residual, solve, transfer_factor
from .errors import *  # noqa: F401,F403
from .families import (
    GridPlan,
    NormalizedFunction,
    RatioFunction,
    SchwarzSpec,
    build_f_from_pair,
    build_starlike_strip,
    extremal_example,
    membership_report,
    recurrence_check,
    rogosinski_bound_check,
    schwarz_series,
    subordinate,
)
from .harness import ProbeConfig, VerifyConfig, emit_grid, probe_bounds, verify_all
from .kernel import (
    PairParams,
    StripParams,
    b1_modulus,
    half_plane_targets,
    kernel_eval,
    kernel_series,
    kernel_series_via_log,
)
from .series import (
    ComplexSeries,
    series_antiderivative,
    series_compose,
    series_derivative,
    series_eval,
    series_exp,
    series_log,
    series_product,
    series_quotient,
)

__version__ = "0.1.0"
