"""Numerical defaults and tolerances, kept in one place."""

from dataclasses import dataclass

DEFAULT_ORDER = 64


@dataclass(frozen=True)
class Tolerances:
    #: minimum |b_0| accepted by series_quotient
    quotient_b0: float = 1e-12
    #: slack on the strict strip inequalities
    margin: float = 1e-9
    #: generic residual threshold (recurrence, ODE)
    residual: float = 1e-11
    #: allowed excess of an empirical |a_n| over its theoretical bound
    bound: float = 1e-9
    #: allowed excess of |c_m| over |B_1|
    rogosinski: float = 1e-10
    #: modulus below which g(z)/z is treated as vanishing on a sampling grid
    denominator_zero: float = 1e-8


DEFAULT_TOLERANCES = Tolerances()
