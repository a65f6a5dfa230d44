"""The vertical-strip kernel.

For ``alpha < 1 < beta`` the function

    K(z) = 1 + ((beta - alpha)/pi) i log((1 - q z)/(1 - z)),
    q = exp(2 pi i (1 - alpha)/(beta - alpha)),

maps the unit disk conformally onto ``{alpha < Re w < beta}`` with
``K(0) = 1``. Its Taylor coefficients are

    B_n = ((beta - alpha)/(n pi)) i (1 - q^n)
        = (2 (beta - alpha)/(n pi)) sin(n pi t) exp(i n pi t),   t = (1-alpha)/(beta-alpha).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional

import numpy as np

from .errors import DomainError, RadiusExceeded
from .series import ComplexSeries, series_log


def _check_real(name: str, value: float) -> None:
    if not isinstance(value, (int, float)) or not math.isfinite(value):
        raise DomainError(f"{name} must be a finite real, got {value!r}")


@dataclass(frozen=True)
class StripParams:
    """Edges of the strip ``alpha < Re w < beta``.

    The default constructor requires ``0 <= alpha < 1 < beta``; pass
    ``relaxed=True`` (or use :meth:`relaxed_domain`) to allow any ``alpha < 1``.
    """

    alpha: float
    beta: float
    relaxed: bool = False
    theta: float = field(init=False, repr=False, compare=False)
    q: complex = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _check_real("alpha", self.alpha)
        _check_real("beta", self.beta)
        if not self.alpha < 1 < self.beta:
            raise DomainError(f"need alpha < 1 < beta, got alpha={self.alpha}, beta={self.beta}")
        if not self.relaxed and self.alpha < 0:
            raise DomainError(f"alpha={self.alpha} < 0 requires the relaxed domain")
        theta = (1 - self.alpha) / (self.beta - self.alpha)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "q", complex(np.exp(2j * np.pi * theta)))

    @classmethod
    def relaxed_domain(cls, alpha: float, beta: float) -> "StripParams":
        return cls(alpha, beta, relaxed=True)

    @property
    def width(self) -> float:
        return self.beta - self.alpha

    def contains(self, w):
        """Strict strip membership, elementwise for arrays."""
        re = np.real(w)
        return (self.alpha < re) & (re < self.beta)


@dataclass(frozen=True)
class PairParams:
    """Parameters of the numerator strip (alpha, beta), the denominator strip
    (delta, beta) and the optional Cauchy-Euler parameter rho."""

    alpha: float
    beta: float
    delta: float
    rho: Optional[float] = None
    relaxed: bool = False

    def __post_init__(self):
        for name in ("alpha", "beta", "delta"):
            _check_real(name, getattr(self, name))
        if not (self.alpha < 1 < self.beta and self.delta < 1):
            raise DomainError(
                f"need alpha, delta < 1 < beta, got alpha={self.alpha}, "
                f"delta={self.delta}, beta={self.beta}"
            )
        if not self.relaxed and (self.alpha < 0 or self.delta < 0):
            raise DomainError("negative alpha or delta requires the relaxed domain")
        if self.rho is not None:
            _check_real("rho", self.rho)
            if not self.rho > -1:
                raise DomainError(f"rho must exceed -1, got {self.rho}")

    @property
    def numerator_strip(self) -> StripParams:
        return StripParams(self.alpha, self.beta, relaxed=self.relaxed)

    @property
    def denominator_strip(self) -> StripParams:
        return StripParams(self.delta, self.beta, relaxed=self.relaxed)


def kernel_coefficients(p: StripParams, N: int) -> np.ndarray:
    """``[1, B_1, ..., B_N]`` from the closed form."""
    n = np.arange(1, N + 1)
    phase = np.pi * n * p.theta
    out = np.empty(N + 1, dtype=complex)
    out[0] = 1.0
    out[1:] = (2 * p.width / (n * np.pi)) * np.sin(phase) * np.exp(1j * phase)
    return out


def kernel_series(p: StripParams, N: int) -> ComplexSeries:
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    return ComplexSeries(kernel_coefficients(p, N))


def kernel_series_via_log(p: StripParams, N: int) -> ComplexSeries:
    """Build the kernel from two series logarithms instead of the closed form."""
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    num = series_log(ComplexSeries([1.0, -p.q], order=N))
    den = series_log(ComplexSeries([1.0, -1.0], order=N))
    return 1.0 + (1j * p.width / np.pi) * (num - den)


def kernel_eval(p: StripParams, z):
    """Closed-form value of the kernel at ``z`` (scalar or array), ``|z| < 1``."""
    zz = np.asarray(z, dtype=complex)
    if np.any(np.abs(zz) >= 1):
        raise RadiusExceeded("kernel_eval requires |z| < 1")
    # both 1 - qz and 1 - z lie in Re > 0, so the principal logs are continuous
    w = 1.0 + (1j * p.width / np.pi) * (np.log1p(-p.q * zz) - np.log1p(-zz))
    if w.ndim == 0:
        return complex(w)
    return w


def b1_modulus(p: StripParams) -> float:
    """``|B_1| = (2 (beta - alpha)/pi) sin(pi (1 - alpha)/(beta - alpha))``."""
    return 2 * p.width / math.pi * math.sin(math.pi * p.theta)


class HalfPlaneTargets(NamedTuple):
    lower: Callable  # maps the disk onto Re w > alpha
    upper: Callable  # maps the disk onto Re w < beta


def half_plane_targets(p: PairParams) -> HalfPlaneTargets:
    a, b = p.alpha, p.beta

    def lower(z):
        return (1 + (1 - 2 * a) * z) / (1 - z)

    def upper(z):
        return (1 - (1 - 2 * b) * z) / (1 + z)

    return HalfPlaneTargets(lower, upper)
