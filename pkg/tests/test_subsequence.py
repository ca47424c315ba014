# -*- coding: utf-8 -*-
"""subsequence 模块测试：n_j 的构造、最小性与复核指标。"""

import math
from fractions import Fraction

import pytest

from eqchrom.core.errors import HypothesisViolation, InvalidRangeError, ScanBudgetExceeded
from eqchrom.core.subsequence import (WINDOW, check_minimality, conditions_hold, find_nj, sweep, threshold,
                                      verify_nj)

P = '1/2'


@pytest.fixture(scope='module')
def middle_entries():
    return sweep(28, 32, P, workers=2)


class TestFindNj:

    def test_contiguous_and_valid(self, middle_entries):
        assert [e.j for e in middle_entries] == list(range(28, 33))
        for entry in middle_entries:
            assert entry.n_j % entry.j == 0
            assert entry.k_j == entry.n_j // entry.j
            assert entry.j - WINDOW <= entry.gamma_j <= entry.j + WINDOW
            assert entry.mu_bar_at_kj.log() >= threshold(entry.j)
            assert conditions_hold(entry.n_j, entry.j, P)

    def test_minimal(self, middle_entries):
        for entry in middle_entries:
            report = check_minimality(entry, P)
            assert report.minimal
            assert report.previous_n == entry.n_j - entry.j
            assert not conditions_hold(report.previous_n, entry.j, P)

    def test_increasing(self, middle_entries):
        ns = [e.n_j for e in middle_entries]
        assert all(a < b for a, b in zip(ns, ns[1:]))

    def test_verification(self, middle_entries):
        for entry in middle_entries:
            check = verify_nj(entry, P)
            assert check.divisible
            assert check.threshold_ok
            assert check.minimal
            assert check.gamma_recomputed_error <= 1e-12
            assert check.below_inverse_j
            assert check.log_mu_bar_kj_minus_1 < -math.log(entry.j)
            assert math.isfinite(check.k_step_sum_log)

    def test_gap_shrinks(self, middle_entries):
        top = verify_nj(find_nj(40, P), P)
        assert top.gamma_gap < 1.0
        assert top.below_inverse_j
        assert top.gamma_gap < max(verify_nj(e, P).gamma_gap for e in middle_entries) + 1e-9


class TestErrors:

    def test_small_j(self):
        with pytest.raises(InvalidRangeError):
            find_nj(2, P)

    def test_outside_hypothesis(self):
        with pytest.raises(HypothesisViolation):
            find_nj(20, '9/10')

    def test_budget(self):
        with pytest.raises(ScanBudgetExceeded):
            find_nj(30, P, budget=10)


@pytest.fixture(scope='module')
def full_range():
    return sweep(15, 45, P, workers=4)


class TestFullRange:

    def test_contiguous_tail(self, full_range):
        js = [e.j for e in full_range]
        assert js == list(range(js[0], 46))
        assert js[0] <= 28

    def test_valid_and_minimal(self, full_range):
        for entry in full_range:
            check = verify_nj(entry, P)
            assert check.divisible
            assert check.threshold_ok
            assert check.minimal
            assert abs(entry.gamma_j - entry.j) <= WINDOW

    def test_increasing(self, full_range):
        ns = [e.n_j for e in full_range]
        assert all(a < b for a, b in zip(ns, ns[1:]))

    def test_upper_half(self, full_range):
        upper = [e for e in full_range if e.j >= 30]
        assert upper
        for entry in upper:
            assert verify_nj(entry, P).below_inverse_j
        at_forty = next(e for e in upper if e.j == 40)
        assert verify_nj(at_forty, P).gamma_gap < 1.0

    def test_conditions_accept_fraction_strings(self, full_range):
        entry = full_range[-1]
        assert conditions_hold(entry.n_j, entry.j, '1/2')
        assert conditions_hold(entry.n_j, entry.j, Fraction(1, 2))
        assert not conditions_hold(entry.n_j - entry.j, entry.j, '1/2')
