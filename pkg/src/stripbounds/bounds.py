"""Closed-form coefficient bounds and their beta -> infinity limits.

Notation: ``s(x, beta) = (2 (beta - x)/pi) sin(pi (1 - x)/(beta - x))`` is the
modulus of the first kernel coefficient for the strip ``(x, beta)``, and

    P(s, m) = prod_{k=2}^{m} (k - 2 + s)

with ``P(s, 1) = 1`` (empty product).
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional

from .cauchy_euler import transfer_factor
from .errors import DomainError
from .kernel import PairParams

# above this many factors the products are accumulated as sums of logs
_LOG_SPACE_AFTER = 60


def first_coefficient_modulus(x: float, beta: float) -> float:
    """``s(x, beta)``; equals ``b1_modulus`` of the strip ``(x, beta)``."""
    return 2 * (beta - x) / math.pi * math.sin(math.pi * (1 - x) / (beta - x))


def _product_over_factorial(s: float, m: int, d: int) -> float:
    """``P(s, m) / d!``."""
    if m - 1 <= _LOG_SPACE_AFTER:
        prod = 1.0
        for k in range(2, m + 1):
            prod *= k - 2 + s
        return prod / math.factorial(d)
    logp = math.fsum(math.log(k - 2 + s) for k in range(2, m + 1))
    return math.exp(logp - math.lgamma(d + 1))


def _check_n(n: int) -> int:
    if not isinstance(n, numbers.Integral) or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    return int(n)


def _check_strip(name: str, x: float, beta: float, relaxed: bool) -> None:
    if not (math.isfinite(x) and math.isfinite(beta)) or not x < 1 < beta:
        raise DomainError(f"need {name} < 1 < beta, got {name}={x}, beta={beta}")
    if not relaxed and x < 0:
        raise DomainError(f"{name}={x} < 0 requires relaxed=True")


def _check_rho(rho: Optional[float]) -> float:
    if rho is None or not math.isfinite(rho) or not rho > -1:
        raise DomainError(f"rho must be a finite real > -1, got {rho!r}")
    return rho


def bound_starlike_strip(alpha: float, beta: float, n: int, relaxed: bool = True) -> float:
    """Kuroki-Owa bound ``P(s, n)/(n-1)!`` for ``f`` with ``alpha < Re(zf'/f) < beta``."""
    n = _check_n(n)
    _check_strip("alpha", alpha, beta, relaxed)
    s = first_coefficient_modulus(alpha, beta)
    return _product_over_factorial(s, n, n - 1)


def bound_sg(alpha: float, beta: float, delta: float, n: int, relaxed: bool = False) -> float:
    """Bound on ``|a_n|`` when ``alpha < Re(zf'/g) < beta`` and ``g`` lies in the
    ``(delta, beta)`` starlike-strip class."""
    n = _check_n(n)
    _check_strip("alpha", alpha, beta, relaxed)
    _check_strip("delta", delta, beta, relaxed)
    s_d = first_coefficient_modulus(delta, beta)
    s_a = first_coefficient_modulus(alpha, beta)
    head = _product_over_factorial(s_d, n, n)
    # j runs 1..n-2; the j-th term is P(s_d, n-j)/(n-j-1)!
    tail = math.fsum(_product_over_factorial(s_d, n - j, n - j - 1) for j in range(1, n - 1))
    return head + (s_a / n) * (1 + tail)


def bound_bg(alpha: float, beta: float, delta: float, rho: float, n: int, relaxed: bool = False) -> float:
    """``bound_sg`` times the Cauchy-Euler transfer factor."""
    _check_rho(rho)
    return bound_sg(alpha, beta, delta, n, relaxed=relaxed) * transfer_factor(rho, n)


class Variant(str, Enum):
    CLOSE_TO_CONVEX_ORDER_TYPE = "C(alpha,delta)"
    CLOSE_TO_CONVEX_ORDER = "C(alpha)"
    CLOSE_TO_CONVEX = "C"
    B_G = "B_g"
    H_G = "H_g"
    M_G = "M_g"


def _libera(alpha: float, delta: float, n: int) -> float:
    # 2 (3-2d)(4-2d)...(n-2d)/n! * [n(1-a) + (a-d)]
    if n - 2 <= _LOG_SPACE_AFTER:
        prod = 2.0
        for k in range(3, n + 1):
            prod *= k - 2 * delta
        pre = prod / math.factorial(n)
    else:
        logp = math.log(2.0) + math.fsum(math.log(k - 2 * delta) for k in range(3, n + 1))
        pre = math.exp(logp - math.lgamma(n + 1))
    return pre * (n * (1 - alpha) + (alpha - delta))


def _sum_form(alpha: float, delta: float, n: int) -> float:
    # bound_sg with s_delta -> 2(1-delta), s_alpha -> 2(1-alpha), written as a sum
    s_d = 2 * (1 - delta)
    head = _product_over_factorial(s_d, n, n)
    tail = math.fsum(_product_over_factorial(s_d, n - j, n - j - 1) for j in range(1, n - 1))
    return head + (2 * (1 - alpha) / n) * (1 + tail)


def limit_bound(variant, n: int, alpha: float = 0.0, delta: float = 0.0, rho: Optional[float] = None) -> float:
    """Bound for the classes obtained by letting ``beta -> infinity``.

    ``variant`` is a :class:`Variant` or its string value. The order-type and
    order classes ignore ``rho``; ``B_g``, ``H_g`` and ``M_g`` require it.
    """
    variant = Variant(variant)
    n = _check_n(n)
    for name, x in (("alpha", alpha), ("delta", delta)):
        if not (math.isfinite(x) and 0 <= x < 1):
            raise DomainError(f"{name} must lie in [0, 1), got {x}")
    if variant is Variant.CLOSE_TO_CONVEX_ORDER_TYPE:
        return _libera(alpha, delta, n)
    if variant is Variant.CLOSE_TO_CONVEX_ORDER:
        return n * (1 - alpha) + alpha
    if variant is Variant.CLOSE_TO_CONVEX:
        return float(n)
    factor = transfer_factor(_check_rho(rho), n)
    if variant is Variant.B_G:
        return _sum_form(alpha, delta, n) * factor
    if variant is Variant.H_G:
        return (n * (1 - alpha) + alpha) * factor
    return n * factor


@dataclass(frozen=True)
class BoundTable:
    params: PairParams
    entries: Dict[int, float] = field(default_factory=dict)

    def __post_init__(self):
        for n, b in self.entries.items():
            if not (math.isfinite(b) and b > 0):
                raise DomainError(f"bound for n={n} is not a positive finite number: {b}")


def bound_table(params: PairParams, max_n: int) -> BoundTable:
    """``bound_bg`` entries when ``params.rho`` is set, ``bound_sg`` otherwise."""
    entries = {}
    for n in range(2, max_n + 1):
        if params.rho is None:
            entries[n] = bound_sg(params.alpha, params.beta, params.delta, n, relaxed=params.relaxed)
        else:
            entries[n] = bound_bg(params.alpha, params.beta, params.delta, params.rho, n, relaxed=params.relaxed)
    return BoundTable(params, entries)
