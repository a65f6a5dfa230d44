"""Members of the strip classes built by subordination.

A function ``g`` with ``delta < Re(zg'/g) < beta`` is produced from any Schwarz
function ``w`` as

    g(z) = z exp( integral_0^z (K_{delta,beta}(w(t)) - 1)/t dt ),

so that ``zg'/g = K_{delta,beta}(w)``. Given such ``g`` and ``p = K_{alpha,beta}(v)``
for a second Schwarz function ``v``, the function ``f`` with ``zf' = p g``
satisfies ``alpha < Re(zf'/g) < beta``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .config import DEFAULT_ORDER, DEFAULT_TOLERANCES, Tolerances
from .errors import DenominatorVanishes, DomainError, IndexOutOfOrder, NormalizationError
from .kernel import StripParams, b1_modulus, kernel_series
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

# sentinel edges used to express one-sided half-plane conditions as strips
HALF_PLANE_SENTINEL = 1e6


class NormalizedFunction:
    """``f(z) = z + a_2 z^2 + ...``; the constant and linear terms are checked exactly."""

    __slots__ = ("series",)

    def __init__(self, series: ComplexSeries):
        if not isinstance(series, ComplexSeries):
            series = ComplexSeries(series)
        if series.order < 1 or series[0] != 0 or series[1] != 1:
            raise NormalizationError("a normalized function needs c_0 = 0 and c_1 = 1")
        self.series = series

    @classmethod
    def identity(cls, order: int = DEFAULT_ORDER) -> "NormalizedFunction":
        return cls(ComplexSeries.identity(order))

    @property
    def order(self) -> int:
        return self.series.order

    def __getitem__(self, n):
        return self.series[n]

    def __repr__(self) -> str:
        return f"NormalizedFunction(order={self.order})"


class RatioFunction:
    """``p(z) = 1 + c_1 z + c_2 z^2 + ...``."""

    __slots__ = ("series",)

    def __init__(self, series: ComplexSeries):
        if not isinstance(series, ComplexSeries):
            series = ComplexSeries(series)
        if series[0] != 1:
            raise NormalizationError("a ratio function needs c_0 = 1")
        self.series = series

    @property
    def order(self) -> int:
        return self.series.order

    def __getitem__(self, m):
        return self.series[m]


@dataclass(frozen=True)
class SchwarzSpec:
    """``w(z) = rotation * z * prod_k (w_k - z)/(1 - conj(w_k) z)``."""

    rotation: complex = 1.0
    factors: Tuple[complex, ...] = ()
    degree_cap: int = 8

    def __post_init__(self):
        object.__setattr__(self, "rotation", complex(self.rotation))
        object.__setattr__(self, "factors", tuple(complex(w) for w in self.factors))
        if abs(abs(self.rotation) - 1) > 1e-12:
            raise DomainError(f"|rotation| must be 1, got {abs(self.rotation)}")
        if any(not abs(w) < 1 for w in self.factors):
            raise DomainError("every Blaschke zero must lie in the open unit disk")
        if len(self.factors) > self.degree_cap:
            raise DomainError(f"{len(self.factors)} factors exceed degree_cap={self.degree_cap}")

    @classmethod
    def random(cls, rng: np.random.Generator, max_factors: int = 3, radius: float = 0.8) -> "SchwarzSpec":
        """Factor count uniform in ``0..max_factors``, zeros uniform in the disk
        of the given radius, rotation uniform on the circle."""
        k = int(rng.integers(0, max_factors + 1))
        rot = np.exp(2j * np.pi * rng.random())
        r = radius * np.sqrt(rng.random(k))
        phi = 2 * np.pi * rng.random(k)
        return cls(complex(rot), tuple(complex(z) for z in r * np.exp(1j * phi)))

    def __call__(self, z):
        zz = np.asarray(z, dtype=complex)
        out = self.rotation * zz
        for w in self.factors:
            out = out * (w - zz) / (1 - np.conj(w) * zz)
        return out


def schwarz_series(s: SchwarzSpec, N: int) -> ComplexSeries:
    out = ComplexSeries([0.0, s.rotation], order=N)
    for w in s.factors:
        factor = series_quotient(ComplexSeries([w, -1.0], order=N), ComplexSeries([1.0, -np.conj(w)], order=N))
        out = series_product(out, factor)
    return out


def subordinate(target: ComplexSeries, omega: ComplexSeries) -> ComplexSeries:
    """``target(omega(z))``; ``omega`` must vanish at the origin."""
    return series_compose(target, omega)


def _z_exp_integral(integrand_times_z: ComplexSeries, order: int) -> NormalizedFunction:
    # z * exp( int_0^z h(t)/t dt ) for h with h(0) = 0
    integral = series_antiderivative(integrand_times_z.shift_down())
    return NormalizedFunction(series_exp(integral).shift_up().truncate(order))


def build_starlike_strip(omega: ComplexSeries, p: StripParams, N: Optional[int] = None) -> NormalizedFunction:
    """``g`` with ``zg'/g = K_p(omega)``; a member of the starlike strip class for ``p``."""
    order = omega.order if N is None else min(N, omega.order)
    if order < 1:
        raise DomainError("order must be at least 1")
    h = series_compose(kernel_series(p, order), omega.truncate(order))
    return _z_exp_integral(h - 1.0, order)


def extremal_example(p: StripParams, N: int = DEFAULT_ORDER) -> NormalizedFunction:
    """``z exp{((beta-alpha)/pi) i int_0^z log((1-qt)/(1-t)) dt/t}``, built from
    series logarithms."""
    if N < 1:
        raise DomainError("N must be at least 1")
    logs = series_log(ComplexSeries([1.0, -p.q], order=N)) - series_log(ComplexSeries([1.0, -1.0], order=N))
    return _z_exp_integral((1j * p.width / np.pi) * logs, N)


def build_f_from_pair(p: RatioFunction, g: NormalizedFunction) -> NormalizedFunction:
    """Solve ``z f' = p g``: ``a_n = [z^n](p g) / n``."""
    pg = series_product(p.series, g.series).coeffs
    a = np.zeros(pg.size, dtype=complex)
    a[1:] = pg[1:] / np.arange(1, pg.size)
    a[1] = 1.0  # (pg)_1 = g_1 = 1 exactly
    return NormalizedFunction(ComplexSeries(a))


def recurrence_check(f: NormalizedFunction, g: NormalizedFunction, p: RatioFunction, n: int) -> float:
    """``|n a_n - b_n - c_{n-1} - sum_{j=1}^{n-2} c_j b_{n-j}|``."""
    order = min(f.order, g.order, p.order + 1)
    if not 2 <= n <= order:
        raise IndexOutOfOrder(f"n={n} outside 2..{order}")
    a, b, c = f.series.coeffs, g.series.coeffs, p.series.coeffs
    s = sum(c[j] * b[n - j] for j in range(1, n - 1))
    return float(abs(n * a[n] - b[n] - c[n - 1] - s))


def ratio_of(numerator: NormalizedFunction, denominator: NormalizedFunction) -> ComplexSeries:
    """Series of ``z f'/g`` formed as ``f' / (g/z)`` to avoid the removable singularity."""
    return series_quotient(series_derivative(numerator.series), denominator.series.shift_down())


@dataclass(frozen=True)
class GridPlan:
    """Polar sampling grid: ``radii`` circles from ``r_min`` to ``r_max``, ``angles`` rays."""

    radii: int = 16
    r_min: float = 0.05
    r_max: float = 0.95
    angles: int = 256

    def __post_init__(self):
        if not (0 < self.r_min <= self.r_max < 1) or self.radii < 1 or self.angles < 1:
            raise DomainError(f"invalid grid plan {self}")

    def radius_values(self) -> np.ndarray:
        return np.linspace(self.r_min, self.r_max, self.radii)

    def points(self) -> np.ndarray:
        """Array of shape ``(radii, angles)``."""
        theta = 2 * np.pi * np.arange(self.angles) / self.angles
        return self.radius_values()[:, None] * np.exp(1j * theta)[None, :]


def tail_allowance(series: ComplexSeries, r, window: int = 8):
    """Geometric estimate of the neglected tail ``sum_{n>N} C r^n`` at radius ``r``,
    with ``C`` the largest modulus among the last ``window`` coefficients."""
    c = np.abs(series.coeffs[-window:])
    big = float(np.max(c)) if c.size else 0.0
    r = np.asarray(r, dtype=float)
    return big * r ** (series.order + 1) / (1 - r)


@dataclass(frozen=True)
class MembershipReport:
    min_re: float
    max_re: float
    margin: float
    tail_allowance: float
    passed: bool
    params: StripParams = field(repr=False)


def membership_report(
    numerator: NormalizedFunction,
    denominator: NormalizedFunction,
    p: StripParams,
    grid: Optional[GridPlan] = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> MembershipReport:
    """Sample ``Re(z f'/g)`` on a polar grid and compare with the strip ``p``.

    ``margin`` is the signed distance of the sampled values to the nearer strip
    edge (negative means the strip was left). ``passed`` allows each circle an
    excursion of ``tol.margin`` plus the estimated truncation tail at that radius.
    """
    grid = grid or GridPlan()
    pts = grid.points()
    den = denominator.series.shift_down()
    if np.min(np.abs(series_eval(den, pts, r_max=grid.r_max + 1e-12))) < tol.denominator_zero:
        raise DenominatorVanishes("g(z)/z vanishes on the sampling grid")
    q = ratio_of(numerator, denominator)
    re = np.real(series_eval(q, pts, r_max=grid.r_max + 1e-12))
    per_circle = np.minimum(re - p.alpha, p.beta - re).min(axis=1)
    tails = tail_allowance(q, grid.radius_values())
    passed = bool(np.all(per_circle > -(tol.margin + tails)))
    return MembershipReport(
        min_re=float(re.min()),
        max_re=float(re.max()),
        margin=float(per_circle.min()),
        tail_allowance=float(tails.max()),
        passed=passed,
        params=p,
    )


def starlike_order_strip(alpha: float) -> StripParams:
    """``Re(zf'/f) > alpha`` expressed with a far right edge."""
    return StripParams(alpha, HALF_PLANE_SENTINEL)


def upper_half_plane_strip(beta: float) -> StripParams:
    """``Re(zf'/f) < beta`` expressed with a far left edge."""
    return StripParams.relaxed_domain(-HALF_PLANE_SENTINEL, beta)


@dataclass(frozen=True)
class RogosinskiReport:
    max_ratio: float
    max_coefficient: float
    b1: float
    worst_index: int
    passed: bool


def rogosinski_bound_check(
    p: RatioFunction, params: StripParams, m_max: Optional[int] = None, tol: Tolerances = DEFAULT_TOLERANCES
) -> RogosinskiReport:
    """Check ``|c_m| <= |B_1|`` for ``1 <= m <= m_max``."""
    m_max = p.order if m_max is None else min(m_max, p.order)
    b1 = b1_modulus(params)
    mods = np.abs(p.series.coeffs[1 : m_max + 1])
    if mods.size == 0:
        return RogosinskiReport(0.0, 0.0, b1, 0, True)
    k = int(np.argmax(mods))
    top = float(mods[k])
    return RogosinskiReport(top / b1, top, b1, k + 1, top <= b1 + tol.rogosinski)


def random_certified_triple(rng: np.random.Generator, params, order: int = DEFAULT_ORDER):
    """Draw ``(f, g, p)`` from two random Schwarz functions for a
    :class:`~stripbounds.kernel.PairParams`."""
    spec_g = SchwarzSpec.random(rng)
    spec_p = SchwarzSpec.random(rng)
    return certified_triple(params, spec_g, spec_p, order)


def certified_triple(params, spec_g: SchwarzSpec, spec_p: SchwarzSpec, order: int = DEFAULT_ORDER):
    g = build_starlike_strip(schwarz_series(spec_g, order), params.denominator_strip)
    p = RatioFunction(subordinate(kernel_series(params.numerator_strip, order), schwarz_series(spec_p, order)))
    f = build_f_from_pair(p, g)
    return f, g, p
