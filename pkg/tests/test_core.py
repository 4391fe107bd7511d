import math
import time
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import sqrt2lab as s2
from sqrt2lab.errors import NonRepresentableError, ZeroTermError, ZeroValueError

from oracles import floor_div_sqrt2, floor_mul_sqrt2, floor_sqrt, reference_step

ORBIT_73_PREFIX = [
    73, 103, 145, 205, 289, 408, 288, 203, 287, 405, 572, 404, 285, 403, 569, 804, 568,
]


class TestIsqrt:
    @pytest.mark.parametrize(
        "x,expected",
        [(0, 0), (1, 1), (2, 1), (3, 1), (4, 2), (10658, 103), (2**64, 2**32)],
    )
    def test_known_values(self, x, expected):
        assert s2.isqrt(x) == expected

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            s2.isqrt(-1)

    def test_contract_small_range(self):
        for x in range(0, 10000):
            s = s2.isqrt(x)
            assert s * s <= x < (s + 1) * (s + 1)

    @given(st.integers(min_value=0, max_value=10**60))
    def test_contract_property(self, x):
        s = s2.isqrt(x)
        assert s * s <= x < (s + 1) * (s + 1)

    def test_directed_rounding_oracle_on_doubled_squares(self):
        for k in range(1, 10001):
            assert s2.isqrt(2 * k * k) == floor_sqrt(2 * k * k)


class TestStep:
    @pytest.mark.parametrize("n,expected", [(73, 103), (408, 288), (0, 0), (1, 1)])
    def test_known_values(self, n, expected):
        assert s2.step(n) == expected

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            s2.step(-5)

    def test_oracle_agreement_to_1e5(self):
        for n in range(0, 100001):
            assert s2.step(n) == reference_step(n)

    @given(st.integers(min_value=0, max_value=10**30))
    def test_never_negative_and_bracketed(self, n):
        v = s2.step(n)
        assert v >= 0
        # loose bracket: n/sqrt2 - 1 < step(n) < n*sqrt2 + 1, in squared form
        assert v == 0 or (v - 1) * (v - 1) < 2 * n * n  # v - 1 < n sqrt2
        assert 2 * (v + 1) * (v + 1) > n * n  # v + 1 > n / sqrt2
        if n % 2 == 0:
            assert v == floor_div_sqrt2(n)
        else:
            assert v == floor_mul_sqrt2(n)


class TestStepAlpha:
    def test_sqrt2_config_matches_exact_route(self):
        cfg = s2.MapConfig(s2.SQRT2)
        assert s2.step_alpha(73, cfg) == s2.step(73) == 103

    @pytest.mark.parametrize("n,alpha,expected", [(4, 2, 8), (5, 2, 2)])
    def test_rational_family_rule(self, n, alpha, expected):
        assert s2.step_alpha(n, s2.MapConfig(alpha)) == expected

    def test_exact_and_interval_routes_agree_to_1e4(self):
        cfg = s2.MapConfig(s2.SQRT2, precision_bits=8)  # low start to force doubling
        for n in range(0, 10001):
            assert s2.step_alpha(n, cfg) == s2.step(n)

    def test_fraction_alpha(self):
        cfg = s2.MapConfig(Fraction(2, 3))
        assert s2.step_alpha(6, cfg) == 4  # floor(6 * 2/3)
        assert s2.step_alpha(5, cfg) == 7  # floor(5 * 3/2)

    def test_zero_denominator_rejected(self):
        with pytest.raises(NonRepresentableError):
            s2.MapConfig((4, 0))

    def test_nonpositive_alpha_rejected(self):
        with pytest.raises(ValueError):
            s2.MapConfig(0)
        with pytest.raises(ValueError):
            s2.MapConfig(Fraction(-1, 2))

    def test_non_finite_alpha_rejected(self):
        with pytest.raises(NonRepresentableError):
            s2.MapConfig(float("inf"))


class TestOrbit:
    def test_prefix_of_73(self):
        values = [st.value for st in s2.orbit(73, 17)]
        assert values == ORBIT_73_PREFIX

    def test_window_of_10_parities(self):
        stats = s2.orbit_stats(73, 10)
        assert (stats.even_count, stats.odd_count) == (2, 8)
        assert stats.p0 == pytest.approx(0.2)

    def test_orbit_and_stats_agree(self):
        states = s2.orbit(73, 200)
        evens = sum(1 for st in states if st.value % 2 == 0)
        stats = s2.orbit_stats(73, 200)
        assert stats.even_count == evens
        assert stats.m == 200
        assert stats.log_value == pytest.approx(s2.log_of_big(states[-1].value))

    def test_step_indices_increment(self):
        states = s2.orbit(5, 50)
        assert [st.step for st in states] == list(range(50))

    @given(st.integers(min_value=0, max_value=5000), st.integers(min_value=1, max_value=300))
    @settings(max_examples=50)
    def test_parity_counts_conserved(self, n, m):
        stats = s2.orbit_stats(n, m)
        assert stats.even_count + stats.odd_count == stats.m == m

    def test_zero_fixed_point(self):
        assert [st.value for st in s2.orbit(0, 4)] == [0, 0, 0, 0]


class TestGrowth:
    def test_fixed_point_growth_is_one(self):
        assert s2.growth_estimate(1, 5) == pytest.approx(1.0)
        assert s2.growth_estimate(1, 977) == pytest.approx(1.0)

    def test_73_long_run_growth_band(self):
        g = s2.growth_estimate(73, 20000)
        assert 1.020 <= g <= 1.025

    def test_zero_iterate_signals(self):
        with pytest.raises(ZeroValueError):
            s2.growth_estimate(0, 3)

    def test_series_matches_pointwise(self):
        series = dict(s2.growth_series(73, 50, r_min=10, stride=10))
        for r, g in series.items():
            assert g == pytest.approx(s2.growth_estimate(73, r), rel=1e-12)

    def test_log_of_big_accuracy(self):
        for x in (5, 12345, 2**70 + 999, 10**50 + 7, 3**200):
            expected = Fraction(x).numerator  # exact integer
            # compare against 60-digit decimal logarithm via mpmath
            import mpmath

            with mpmath.workdps(60):
                ref = float(mpmath.log(mpmath.mpf(expected)))
            assert s2.log_of_big(x) == pytest.approx(ref, rel=1e-9)


class TestBorderline:
    def test_small_product_matches_fraction_oracle(self):
        prod = Fraction(1)
        for r in range(1, 11):
            prod *= Fraction(s2.step(r), r)
        expected = float(prod) ** (1 / 10)
        got = s2.borderline_check(s2.MapConfig(s2.SQRT2), 10)
        assert got == pytest.approx(expected, rel=1e-12)
        assert prod == Fraction(7, 30)

    def test_sqrt2_map_is_borderline_at_1e4(self):
        value = s2.borderline_check(s2.MapConfig(s2.SQRT2), 10**4)
        assert 0.97 < value <= 1.0

    def test_alpha_4_rejected_via_zero_term(self):
        # floor(1/4) = 0 makes the very first product term vanish, which is
        # the not-Collatz-like rejection for this parameter
        with pytest.raises(ZeroTermError) as exc:
            s2.borderline_check(s2.MapConfig(4), 100)
        assert exc.value.r == 1

    def test_rational_alpha_inside_unit_band(self):
        value = s2.borderline_check(s2.MapConfig(Fraction(2, 3)), 2000)
        assert 0.9 < value <= 1.0

    def test_requires_n_max_at_least_two(self):
        with pytest.raises(ValueError):
            s2.borderline_check(s2.MapConfig(s2.SQRT2), 1)
