"""Coefficient-wise solution of

    z^2 w'' + 2(1+rho) z w' + rho(1+rho) w = (1+rho)(2+rho) phi(z),   rho > -1.

The left-hand operator is diagonal on monomials: it sends ``z^n`` to
``(n+rho)(n+1+rho) z^n``. The analytic solution therefore has
``a_n = transfer_factor(rho, n) * phi_n``.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .series import ComplexSeries, series_derivative


def _check_rho(rho: float) -> None:
    if not (isinstance(rho, (int, float)) and math.isfinite(rho) and rho > -1):
        raise DomainError(f"rho must be a finite real > -1, got {rho!r}")


def transfer_factor(rho: float, n: int) -> float:
    """``(1+rho)(2+rho)/((n+rho)(n+1+rho))``; equals 1 at ``n = 1``."""
    _check_rho(rho)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return (1 + rho) * (2 + rho) / ((n + rho) * (n + 1 + rho))


def operator_eigenvalue(rho: float, n: int) -> float:
    return (n + rho) * (n + 1 + rho)


def _factors(rho: float, order: int) -> np.ndarray:
    f = np.zeros(order + 1)
    for n in range(1, order + 1):
        f[n] = transfer_factor(rho, n)
    f[1] = 1.0
    return f


def solve(phi, rho: float):
    """Analytic solution ``w`` of the equation for forcing ``phi``.

    Accepts a :class:`~stripbounds.families.NormalizedFunction` (and returns
    one) or a bare :class:`ComplexSeries`.
    """
    _check_rho(rho)
    series = getattr(phi, "series", phi)
    out = ComplexSeries(series.coeffs * _factors(rho, series.order))
    if series is phi:
        return out
    return type(phi)(out)


def forcing_for(f, rho: float):
    """Inverse of :func:`solve`: the forcing that produces ``f``."""
    _check_rho(rho)
    series = getattr(f, "series", f)
    fac = _factors(rho, series.order)
    fac[0] = 1.0
    out = ComplexSeries(series.coeffs / fac)
    if series is f:
        return out
    return type(f)(out)


def apply_operator(w: ComplexSeries, rho: float) -> ComplexSeries:
    """``z^2 w'' + 2(1+rho) z w' + rho(1+rho) w`` built from series derivatives."""
    d1 = series_derivative(w)
    d2 = series_derivative(d1)
    order = w.order
    z2w2 = ComplexSeries(np.concatenate([[0.0, 0.0], d2.coeffs]), order=order)
    zw1 = ComplexSeries(np.concatenate([[0.0], d1.coeffs]), order=order)
    return z2w2 + 2 * (1 + rho) * zw1 + rho * (1 + rho) * w


def ode_residual(f, phi, rho: float) -> float:
    """Max coefficient modulus of ``L[f] - (1+rho)(2+rho) phi`` up to the common order."""
    _check_rho(rho)
    fs = getattr(f, "series", f)
    ps = getattr(phi, "series", phi)
    order = min(fs.order, ps.order)
    lhs = apply_operator(fs.truncate(order), rho)
    r = lhs - (1 + rho) * (2 + rho) * ps.truncate(order)
    return float(np.max(np.abs(r.coeffs)))
