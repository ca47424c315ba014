# -*- coding: utf-8 -*-
"""numerics 模块测试：对数阶乘、二项比值与 LogValue。"""

import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eqchrom.core.errors import DomainError, InvalidRangeError
from eqchrom.core.numerics import (EXACT_SUM, STIRLING, LogValue, exact_binomial, exact_binomial_ratio,
                                   log_binomial_ratio, log_binomial_ratio_array, log_factorial,
                                   log_factorial_array, log_factorial_ratio)


def _exact_log_ratio(N, m, drop):
    value = exact_binomial_ratio(N, m, drop)
    if value == 0:
        return float('-inf')
    return math.log(value.numerator) - math.log(value.denominator)


class TestLogFactorial:

    @pytest.mark.parametrize('n', [0, 1, 2, 5, 19, 20, 21, 50, 170, 1000, 10 ** 6, 10 ** 9])
    def test_matches_mpmath(self, n):
        expected = float(mpmath.loggamma(n + 1))
        assert log_factorial(n) == pytest.approx(expected, rel=1e-12, abs=1e-12)

    @pytest.mark.parametrize('n', [20, 64, 500, 10 ** 4, 10 ** 6])
    def test_modes_agree(self, n):
        a = log_factorial(n, EXACT_SUM)
        b = log_factorial(n, STIRLING)
        assert abs(a - b) <= 1e-10 * a

    def test_stirling_rejects_small_n(self):
        with pytest.raises(DomainError):
            log_factorial(19, STIRLING)

    def test_negative_rejected(self):
        with pytest.raises(InvalidRangeError):
            log_factorial(-1)

    def test_unknown_mode(self):
        with pytest.raises(InvalidRangeError):
            log_factorial(30, 'lanczos')

    def test_array_matches_scalar(self):
        ns = np.array([0, 1, 7, 30, 4000, 123456])
        out = log_factorial_array(ns)
        for n, value in zip(ns, out):
            assert value == pytest.approx(log_factorial(int(n)), rel=1e-12, abs=1e-12)

    @pytest.mark.parametrize('a,h', [(0, 5), (3, 4096), (10, 5000), (100, 10 ** 5), (10 ** 6, 10 ** 4)])
    def test_factorial_ratio(self, a, h):
        expected = float(mpmath.loggamma(a + h + 1) - mpmath.loggamma(a + 1))
        assert log_factorial_ratio(a, h) == pytest.approx(expected, rel=1e-11)


class TestBinomialRatio:

    def test_small_exact(self):
        assert exact_binomial_ratio(6, 3, 1) == Fraction(1, 2)
        assert exact_binomial_ratio(6, 3, 2) == Fraction(1, 5)
        assert exact_binomial_ratio(6, 3, 4) == 0

    def test_exact_binomial_out_of_range(self):
        assert exact_binomial(5, 7) == 0
        assert exact_binomial(5, -1) == 0
        with pytest.raises(InvalidRangeError):
            exact_binomial(-2, 1)

    @pytest.mark.parametrize('n', range(0, 41))
    def test_log_factorial_gives_binomial(self, n):
        for k in range(n + 1):
            value = math.exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k))
            assert value == pytest.approx(math.comb(n, k), rel=1e-9)
            assert exact_binomial(n, k) == math.comb(n, k)

    @pytest.mark.parametrize('n', [0, 1, 7, 40, 333])
    def test_exact_binomial_symmetric(self, n):
        for k in range(n + 1):
            assert exact_binomial(n, k) == exact_binomial(n, n - k)

    @pytest.mark.parametrize('N,m,drop', [
        (6, 3, 2), (45, 22, 10), (300, 150, 120), (5000, 2500, 1000),
        (20000, 10000, 5000), (20000, 5000, 9000), (100000, 50000, 4097), (30, 15, 15),
    ])
    def test_log_matches_exact(self, N, m, drop):
        expected = _exact_log_ratio(N, m, drop)
        value = log_binomial_ratio(N, m, drop).log()
        assert value == pytest.approx(expected, rel=1e-10, abs=1e-10)

    def test_zero_when_too_many_forbidden(self):
        assert log_binomial_ratio(6, 3, 4).is_zero
        assert log_binomial_ratio(10, 10, 1).is_zero

    def test_trivial_cases(self):
        assert log_binomial_ratio(10, 0, 7).log() == 0.0
        assert log_binomial_ratio(10, 4, 0).log() == 0.0

    def test_invalid_arguments(self):
        with pytest.raises(InvalidRangeError):
            log_binomial_ratio(5, 6, 0)
        with pytest.raises(InvalidRangeError):
            log_binomial_ratio(5, 2, -1)

    def test_array_matches_scalar(self):
        N = np.array([6, 45, 300, 5000, 20000, 10 ** 6, 6], dtype=np.int64)
        m = np.array([3, 22, 150, 2500, 10000, 5 * 10 ** 5, 3], dtype=np.int64)
        drop = np.array([2, 10, 120, 1000, 5000, 30000, 4], dtype=np.int64)
        out = log_binomial_ratio_array(N, m, drop)
        for i in range(len(N)):
            expected = log_binomial_ratio(int(N[i]), int(m[i]), int(drop[i])).log()
            if expected == float('-inf'):
                assert out[i] == -np.inf
            else:
                assert out[i] == pytest.approx(expected, rel=1e-9)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(min_value=2, max_value=3000), st.data())
    def test_non_increasing_in_drop(self, N, data):
        m = data.draw(st.integers(min_value=0, max_value=N))
        drop = data.draw(st.integers(min_value=0, max_value=N - 1))
        assert log_binomial_ratio(N, m, drop + 1).log() <= log_binomial_ratio(N, m, drop).log() + 1e-12


class TestLogValue:

    def test_of_rational(self):
        v = LogValue.of(Fraction(6, 5))
        assert v.log() == pytest.approx(math.log(1.2))
        assert v.to_float() == pytest.approx(1.2)

    def test_zero(self):
        z = LogValue.of(0)
        assert z.is_zero
        assert z.log() == float('-inf')
        assert z.to_float() == 0.0
        assert (z * LogValue.of(5)).is_zero
        assert str(z) == "0"

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            LogValue.of(-1)

    def test_arithmetic(self):
        a = LogValue.of(6)
        b = LogValue.of(3)
        assert (a / b).to_float() == pytest.approx(2.0)
        assert (a * b).to_float() == pytest.approx(18.0)
        assert (b ** 2).to_float() == pytest.approx(9.0)
        assert b < a
        assert a <= a

    def test_huge_magnitudes(self):
        big = LogValue.from_log(1e6)
        assert (big / big).log() == 0.0
        assert big.log_base(math.e) == pytest.approx(1e6)
