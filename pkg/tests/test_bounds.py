import itertools
import math

import numpy as np
import pytest

from oracles import mp_bound_sg, mp_bound_starlike
from stripbounds.bounds import (
    BoundTable,
    Variant,
    bound_bg,
    bound_sg,
    bound_starlike_strip,
    bound_table,
    first_coefficient_modulus,
    limit_bound,
)
from stripbounds.cauchy_euler import transfer_factor
from stripbounds.errors import DomainError
from stripbounds.kernel import PairParams, StripParams, b1_modulus

S = 4 / math.pi


class TestStarlikeStrip:
    def test_n2(self):
        assert abs(bound_starlike_strip(0, 2, 2) - S) < 1e-15

    def test_n3(self):
        assert abs(bound_starlike_strip(0, 2, 3) - 1.4471892415062835146) < 1e-14

    @pytest.mark.parametrize("n", range(2, 7))
    def test_reade_limit(self, n):
        assert bound_starlike_strip(0, 1e6, n) == pytest.approx(n, rel=1e-4)

    def test_frozen(self):
        assert bound_starlike_strip(0.25, 1.5, 6) == pytest.approx(0.54587362853842985612, rel=1e-13)

    def test_s_is_b1(self):
        for a, b in [(0, 2), (0.3, 1.7), (0.9, 20)]:
            assert first_coefficient_modulus(a, b) == b1_modulus(StripParams(a, b))

    def test_domain(self):
        with pytest.raises(DomainError):
            bound_starlike_strip(1, 2, 3)
        with pytest.raises(DomainError):
            bound_starlike_strip(0, 2, 1)
        assert bound_starlike_strip(-1, 2, 3) > 0


class TestSg:
    def test_n2_collapse(self):
        for a in (0.0, 0.4, 0.8):
            assert bound_sg(a, 2, a, 2) == pytest.approx(first_coefficient_modulus(a, 2), rel=1e-15)
        assert abs(bound_sg(0, 2, 0, 2) - S) < 1e-15

    def test_n3_collapse(self):
        assert abs(bound_sg(0, 2, 0, 3) - S * (1 + S) / 2) < 1e-14

    @pytest.mark.parametrize(
        "args,expected",
        [
            ((0, 2, 0, 3), 1.4471892415062835146),
            ((0.3, 3, 0.2, 5), 1.9019039919217367743),
            ((0.5, 1.5, 0.1, 8), 0.47536260429536840062),
            ((0, 2, 0, 10), 2.0593570786223332143),
        ],
    )
    def test_frozen_values(self, args, expected):
        assert bound_sg(*args) == pytest.approx(expected, rel=1e-13)

    def test_relaxed(self):
        with pytest.raises(DomainError):
            bound_sg(-0.5, 2.5, -0.25, 4)
        assert bound_sg(-0.5, 2.5, -0.25, 4, relaxed=True) == pytest.approx(3.1720266189872900551, rel=1e-13)

    def test_against_oracle_grid(self, rng):
        for _ in range(30):
            a, d = rng.uniform(0, 0.95, 2)
            b = 1 + rng.uniform(0.01, 9)
            n = int(rng.integers(2, 40))
            assert bound_sg(a, b, d, n) == pytest.approx(mp_bound_sg(a, b, d, n), rel=1e-12)

    def test_log_space_branch_is_continuous(self):
        # n = 61 and 62 straddle the switch to log-space accumulation
        for n in (60, 61, 62, 63, 90):
            assert bound_starlike_strip(0.1, 2.7, n) == pytest.approx(mp_bound_starlike(0.1, 2.7, n), rel=1e-12)
            assert bound_sg(0.1, 2.7, 0.2, n) == pytest.approx(mp_bound_sg(0.1, 2.7, 0.2, n), rel=1e-12)

    def test_reade_limit_n2(self):
        assert abs(bound_sg(0, 1e6, 0, 2) - 2) < 1e-4

    def test_positive_finite_grid(self):
        for a, d, b in itertools.product(np.linspace(0, 0.99, 10), np.linspace(0, 0.99, 10), np.geomspace(1.01, 1e4, 10)):
            for n in (2, 5, 20):
                v = bound_sg(float(a), float(b), float(d), n)
                assert math.isfinite(v) and v > 0


class TestBg:
    def test_rho_zero_n2(self):
        assert bound_bg(0, 2, 0, 0, 2) == pytest.approx(bound_sg(0, 2, 0, 2) / 3, rel=1e-15)

    def test_large_rho(self):
        assert bound_bg(0.2, 3, 0.1, 1e6, 4) == pytest.approx(bound_sg(0.2, 3, 0.1, 4), rel=1e-4)

    def test_combined_limit(self):
        assert abs(bound_bg(0, 1e6, 0, 0, 2) - 2 / 3) < 1e-3

    def test_frozen(self):
        assert bound_bg(0.3, 3, 0.2, 1, 5) == pytest.approx(0.27170057027453382491, rel=1e-13)

    @pytest.mark.parametrize("rho", [-0.9, -0.5, 0, 1, 7.5])
    def test_exact_factorization_and_strictness(self, rho):
        for n in range(2, 12):
            sg = bound_sg(0.1, 2.2, 0.3, n)
            assert bound_bg(0.1, 2.2, 0.3, rho, n) == sg * transfer_factor(rho, n)
            assert bound_bg(0.1, 2.2, 0.3, rho, n) < sg

    def test_domain(self):
        with pytest.raises(DomainError):
            bound_bg(0, 2, 0, -1, 3)


class TestLimits:
    def test_reade(self):
        assert limit_bound(Variant.CLOSE_TO_CONVEX, 5) == 5

    def test_order(self):
        assert limit_bound("C(alpha)", 3, alpha=0.5) == pytest.approx(2)

    def test_libera_collapse(self):
        assert limit_bound("C(alpha,delta)", 3) == pytest.approx(3, rel=1e-15)
        for n in range(2, 12):
            assert limit_bound("C(alpha,delta)", n, 0.4, 0.0) == pytest.approx(limit_bound("C(alpha)", n, 0.4), rel=1e-14)

    def test_sum_form_equals_libera_closed_form(self):
        # the beta -> infinity limit of the S_g bound, kept as a sum, agrees with the Libera product form
        for a, d in [(0.3, 0.2), (0.5, 0.5), (0.0, 0.9), (0.7, 0.1)]:
            for n in range(2, 25):
                assert limit_bound("B_g", n, a, d, rho=1e12) == pytest.approx(limit_bound("C(alpha,delta)", n, a, d), rel=1e-9)

    @pytest.mark.parametrize("variant,base", [("B_g", "C(alpha,delta)"), ("H_g", "C(alpha)"), ("M_g", "C")])
    def test_transfer_variants(self, variant, base):
        for rho in (-0.5, 0.0, 2.0):
            for n in range(2, 9):
                expected = limit_bound(base, n, 0.3, 0.2 if base == "C(alpha,delta)" else 0.0) * transfer_factor(rho, n)
                alpha, delta = (0.3, 0.2) if base == "C(alpha,delta)" else (0.3, 0.0)
                assert limit_bound(variant, n, alpha, delta, rho=rho) == pytest.approx(expected, rel=1e-13)

    def test_mg_value(self):
        assert limit_bound("M_g", 2, rho=0) == pytest.approx(2 / 3)

    def test_domain(self):
        with pytest.raises(DomainError):
            limit_bound("B_g", 3, 0.1, 0.1)
        with pytest.raises(DomainError):
            limit_bound("C(alpha)", 3, alpha=1.0)
        with pytest.raises(ValueError):
            limit_bound("nope", 3)

    @pytest.mark.parametrize("alpha,delta", [(0, 0), (0.25, 0), (0.5, 0), (0.3, 0.2), (0.5, 0.5)])
    def test_limit_consistency_rate(self, alpha, delta):
        for n in range(2, 9):
            lim = limit_bound("C(alpha,delta)", n, alpha, delta)
            rel = [abs(bound_sg(alpha, 10.0**k, delta, n) - lim) / lim for k in range(2, 7)]
            c = 10 * rel[0] * 100
            for k, r in zip(range(2, 7), rel):
                assert r < c / 10.0**k + 1e-14


def test_bound_table():
    pp = PairParams(0.1, 2.0, 0.2, rho=0.5)
    t = bound_table(pp, 6)
    assert sorted(t.entries) == [2, 3, 4, 5, 6]
    assert t.entries[4] == bound_bg(0.1, 2.0, 0.2, 0.5, 4)
    with pytest.raises(DomainError):
        BoundTable(pp, {2: -1.0})
