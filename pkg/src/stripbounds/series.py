"""Truncated power series with complex coefficients.

A :class:`ComplexSeries` of order ``N`` stores ``c_0 ... c_N`` of

    f(z) = c_0 + c_1 z + ... + c_N z^N + O(z^(N+1))

Coefficients past the order are unknown, not zero, so binary operations on
operands of different order truncate to the smaller order. Every function in
this module is pure and returns a new series; the coefficient array of a
series is read-only.

    >>> a = ComplexSeries([1, 1], order=4)          # 1 + z
    >>> series_product(a, ComplexSeries([1, -1], order=4)).coeffs.real
    array([ 1.,  0., -1.,  0.,  0.])
"""

from __future__ import annotations

import numbers

import numpy as np

from .config import DEFAULT_TOLERANCES
from .errors import (
    DivisionByZeroConstantTerm,
    NonFiniteCoefficient,
    NonUnitConstantTerm,
    NonVanishingInnerConstant,
    NonZeroConstantTerm,
    RadiusExceeded,
    SeriesError,
)

__all__ = [
    "ComplexSeries",
    "series_product",
    "series_quotient",
    "series_compose",
    "series_exp",
    "series_log",
    "series_derivative",
    "series_antiderivative",
    "series_eval",
]

# exp/log accept a constant term this close to 0 / 1
_CONST_TOL = 1e-14


class ComplexSeries:
    """Immutable dense truncated Taylor series."""

    __slots__ = ("_c",)

    def __init__(self, coeffs, order: int | None = None):
        c = np.array(coeffs, dtype=complex).ravel()
        if order is not None:
            if order < 0:
                raise SeriesError(f"order must be >= 0, got {order}")
            if c.size < order + 1:
                c = np.concatenate([c, np.zeros(order + 1 - c.size, dtype=complex)])
            else:
                c = c[: order + 1].copy()
        if c.size == 0:
            raise SeriesError("a series needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise NonFiniteCoefficient("series coefficients must be finite")
        c.flags.writeable = False
        self._c = c

    # -- construction helpers -------------------------------------------------

    @classmethod
    def constant(cls, value: complex, order: int) -> "ComplexSeries":
        return cls([value], order=order)

    @classmethod
    def identity(cls, order: int) -> "ComplexSeries":
        """The series ``z``."""
        return cls([0.0, 1.0], order=order)

    @classmethod
    def monomial(cls, k: int, order: int, coeff: complex = 1.0) -> "ComplexSeries":
        c = np.zeros(order + 1, dtype=complex)
        if k <= order:
            c[k] = coeff
        return cls(c)

    # -- access ---------------------------------------------------------------

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def order(self) -> int:
        return self._c.size - 1

    def __len__(self) -> int:
        return self._c.size

    def __getitem__(self, k):
        return self._c[k]

    def __iter__(self):
        return iter(self._c)

    def __repr__(self) -> str:
        return f"ComplexSeries(order={self.order}, coeffs={self._c!r})"

    def truncate(self, order: int) -> "ComplexSeries":
        if order > self.order:
            raise SeriesError(f"cannot extend order {self.order} to {order}")
        return ComplexSeries(self._c[: order + 1])

    def shift_up(self) -> "ComplexSeries":
        """Multiply by ``z``; the order grows by one."""
        return ComplexSeries(np.concatenate([[0.0], self._c]))

    def shift_down(self) -> "ComplexSeries":
        """Divide by ``z``; requires a zero constant term."""
        if self._c[0] != 0:
            raise NonZeroConstantTerm("shift_down needs c_0 == 0")
        if self.order == 0:
            raise SeriesError("cannot divide an order-0 series by z")
        return ComplexSeries(self._c[1:])

    def allclose(self, other: "ComplexSeries", atol: float = 1e-12) -> bool:
        n = min(self.order, other.order) + 1
        return bool(np.max(np.abs(self._c[:n] - other._c[:n])) <= atol)

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, ComplexSeries):
            return other
        if isinstance(other, numbers.Number):
            return ComplexSeries([other], order=self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order) + 1
        return ComplexSeries(self._c[:n] + other._c[:n])

    __radd__ = __add__

    def __neg__(self):
        return ComplexSeries(-self._c)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, numbers.Number):
            return ComplexSeries(self._c * other)
        if isinstance(other, ComplexSeries):
            return series_product(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, numbers.Number):
            return ComplexSeries(self._c / other)
        if isinstance(other, ComplexSeries):
            return series_quotient(self, other)
        return NotImplemented


def _common(a: ComplexSeries, b: ComplexSeries):
    n = min(a.order, b.order) + 1
    return a.coeffs[:n], b.coeffs[:n], n


def series_product(a: ComplexSeries, b: ComplexSeries) -> ComplexSeries:
    """Cauchy product truncated at ``min(a.order, b.order)``."""
    x, y, n = _common(a, b)
    return ComplexSeries(np.convolve(x, y)[:n])


def series_quotient(a: ComplexSeries, b: ComplexSeries, threshold: float | None = None) -> ComplexSeries:
    """Solve ``q * b = a`` term by term.

    Raises DivisionByZeroConstantTerm when ``|b_0|`` is below ``threshold``
    (default taken from :data:`DEFAULT_TOLERANCES`).
    """
    if threshold is None:
        threshold = DEFAULT_TOLERANCES.quotient_b0
    x, y, n = _common(a, b)
    if abs(y[0]) < threshold:
        raise DivisionByZeroConstantTerm(f"|b_0| = {abs(y[0]):.3g} below {threshold:g}")
    q = np.zeros(n, dtype=complex)
    b0 = y[0]
    for k in range(n):
        # y[1:k+1] pairs with q[k-1], ..., q[0]
        q[k] = (x[k] - np.dot(y[1 : k + 1], q[k - 1 :: -1][:k])) / b0
    return ComplexSeries(q)


def series_compose(outer: ComplexSeries, inner: ComplexSeries) -> ComplexSeries:
    """Return ``outer(inner(z))`` by Horner's scheme.

    ``inner`` must have a constant term of exactly zero, otherwise every
    output coefficient would depend on the unknown tail of ``outer``.
    """
    if inner.coeffs[0] != 0:
        raise NonVanishingInnerConstant(f"inner constant term is {inner.coeffs[0]!r}")
    n = min(outer.order, inner.order) + 1
    w = inner.coeffs[:n]
    o = outer.coeffs
    acc = np.zeros(n, dtype=complex)
    acc[0] = o[n - 1]
    for k in range(n - 2, -1, -1):
        acc = np.convolve(acc, w)[:n]
        acc[0] += o[k]
    return ComplexSeries(acc)


def series_exp(a: ComplexSeries) -> ComplexSeries:
    """exp of a series with zero constant term, via ``E' = a' E``."""
    c = a.coeffs
    if abs(c[0]) > _CONST_TOL:
        raise NonZeroConstantTerm(f"series_exp needs a_0 = 0, got {c[0]!r}")
    n = c.size
    ka = np.arange(n) * c  # k * a_k
    e = np.zeros(n, dtype=complex)
    e[0] = 1.0
    for m in range(1, n):
        # m E_m = sum_{k=1}^{m} k a_k E_{m-k}
        e[m] = np.dot(ka[1 : m + 1], e[m - 1 :: -1][:m]) / m
    return ComplexSeries(e)


def series_log(a: ComplexSeries) -> ComplexSeries:
    """Principal log of a series with unit constant term, via ``L' = a'/a``."""
    c = a.coeffs
    if abs(c[0] - 1) > _CONST_TOL:
        raise NonUnitConstantTerm(f"series_log needs a_0 = 1, got {c[0]!r}")
    n = c.size
    kl = np.zeros(n, dtype=complex)  # k * L_k
    for m in range(1, n):
        # m a_m = m L_m + sum_{k=1}^{m-1} k L_k a_{m-k}
        kl[m] = m * c[m] - np.dot(kl[1:m], c[m - 1 : 0 : -1])
    out = np.zeros(n, dtype=complex)
    out[1:] = kl[1:] / np.arange(1, n)
    return ComplexSeries(out)


def series_derivative(a: ComplexSeries) -> ComplexSeries:
    """Term-wise derivative; the order drops by one (order 0 gives the zero series)."""
    c = a.coeffs
    if c.size == 1:
        return ComplexSeries([0.0])
    return ComplexSeries(c[1:] * np.arange(1, c.size))


def series_antiderivative(a: ComplexSeries) -> ComplexSeries:
    """Term-wise integral from 0; the order grows by one."""
    c = a.coeffs
    out = np.zeros(c.size + 1, dtype=complex)
    out[1:] = c / np.arange(1, c.size + 1)
    return ComplexSeries(out)


def series_eval(a: ComplexSeries, z, r_max: float = 0.99):
    """Horner evaluation of the truncated polynomial at ``z`` (scalar or array).

    ``r_max`` must itself be below 1; RadiusExceeded is raised when any
    ``|z| > r_max``.
    """
    if not r_max < 1:
        raise RadiusExceeded(f"r_max must be < 1, got {r_max}")
    zz = np.asarray(z, dtype=complex)
    if np.any(np.abs(zz) > r_max):
        raise RadiusExceeded(f"max |z| = {np.max(np.abs(zz)):.6g} exceeds r_max = {r_max}")
    c = a.coeffs
    acc = np.full(zz.shape, c[-1], dtype=complex)
    for k in range(c.size - 2, -1, -1):
        acc = acc * zz + c[k]
    if acc.ndim == 0:
        return complex(acc)
    return acc
