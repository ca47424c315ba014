#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
子序列模块

本模块构造集中性子序列 n_j：对给定的 j，n_j 是满足下面两个条件的最小的 j 的倍数

1. γ(n_j) ∈ [j−10, j+10]（闭区间）
2. μ̄_{n_j, n_j/j} ≥ ln j（所有份大小恰为 j 时，合法无序等分的期望个数）

并复核构造出的 n_j 的性质：整除、γ 窗口、阈值、最小性、|γ_j − j| 的趋势，
以及 μ̄_{n_j, k_j−1} 是否已小于 1/j。

扫描策略
--------
- γ 在 n ≥ 3 上严格递增：先二分找到第一个 γ(tj) ≥ j−10 的 t
- 然后按 t 递增线性扫描；每块 65536 个倍数用向量化的 ln μ̄ 计算，
  接近阈值的候选点按顺序用标量 log_domain 计算复核，第一个通过的即为 n_j
- γ(tj) > j+10 时条件 (1) 不可能再成立，抛出 SubsequenceNotFound
- 扫描超过 2^31 个倍数抛出 ScanBudgetExceeded。p = 1/2 时 n_j 约按 2^{j/2}
  增长，实际可用范围大约是 j ≤ 48

注意事项
--------
- 阈值中的 log j 取自然对数，输出元数据中记录 ``threshold_log: natural``
- 第一个存在 n_j 的 j 只是经验值，不代表理论上的 j_0
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

import numpy as np

from eqchrom.core.errors import ScanBudgetExceeded, SizeGuardError, SubsequenceNotFound, InvalidRangeError
from eqchrom.core.moments import (LOG_DOMAIN, MomentParams, ProbabilityLike, VECTOR_MAX_N, as_probability,
                                  check_hypothesis, gamma, geometric_sum_bound, mu, mu_bar_log_equal_parts)
from eqchrom.core.numerics import LogValue
from eqchrom.lib.run_template import run_ordered

__author__ = 'myh '
__date__ = '2026/9/9 '

WINDOW = 10
SCAN_BUDGET = 2 ** 31
BLOCK_SIZE = 2 ** 16
# 向量化结果与阈值相差在此范围内的点都交给标量复核
CANDIDATE_TOLERANCE = 1e-3
THRESHOLD_LOG = 'natural'


@dataclass(frozen=True)
class SubsequenceEntry:
    j: int
    n_j: int
    k_j: int
    gamma_j: float
    mu_bar_at_kj: LogValue
    mu_bar_at_kj_minus_1: LogValue


def threshold(j: int) -> float:
    return math.log(j)


def _base(p: Fraction) -> float:
    return float(1 / (1 - p))


def _gamma_array(n: np.ndarray, b: float) -> np.ndarray:
    ln_b = math.log(b)
    lb = np.log(n.astype(np.float64)) / ln_b
    return 2.0 * lb - 2.0 * np.log(lb) / ln_b - 2.0 * math.log(2.0) / ln_b


def _scalar_mu_bar(n: int, k: int, p: Fraction) -> LogValue:
    if k < 1:
        return LogValue.zero()
    return mu(MomentParams.build(n, k, p), LOG_DOMAIN).mu_bar


def window_holds(n: int, j: int, b: float) -> bool:
    if n < b:
        return False
    g = gamma(n, b)
    return j - WINDOW <= g <= j + WINDOW


def conditions_hold(n: int, j: int, p: ProbabilityLike) -> bool:
    """n 处两个定义条件是否同时成立（标量计算）。"""
    p = as_probability(p)
    b = _base(p)
    if n < j or n % j or not window_holds(n, j, b):
        return False
    return _scalar_mu_bar(n, n // j, p).log() >= threshold(j)


def _first_t_in_window(j: int, b: float, t_start: int, budget: int) -> int:
    lower_edge = j - WINDOW
    if gamma(t_start * j, b) >= lower_edge:
        return t_start
    lo, hi = t_start, t_start + 1
    while gamma(hi * j, b) < lower_edge:
        lo = hi
        hi = t_start + 2 * (hi - t_start)
        if hi - t_start > budget:
            raise ScanBudgetExceeded(j, budget)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if gamma(mid * j, b) >= lower_edge:
            hi = mid
        else:
            lo = mid
    return hi


def _make_entry(j: int, t: int, p: Fraction, b: float, mu_bar_at_kj: LogValue) -> SubsequenceEntry:
    n = t * j
    return SubsequenceEntry(j, n, t, gamma(n, b), mu_bar_at_kj, _scalar_mu_bar(n, t - 1, p))


def find_nj(j: int, p: ProbabilityLike, budget: int = SCAN_BUDGET, block_size: int = BLOCK_SIZE) -> SubsequenceEntry:
    if j < 3:
        raise InvalidRangeError(f"find_nj 要求 j ≥ 3：{j}")
    p = as_probability(p)
    check_hypothesis(p)
    b = _base(p)
    thr = threshold(j)
    t_start = max(1, math.ceil(max(3.0, b) / j))
    t = _first_t_in_window(j, b, t_start, budget)
    scanned = 0
    upper_edge = j + WINDOW

    while True:
        if scanned >= budget:
            raise ScanBudgetExceeded(j, budget)
        count = min(block_size, budget - scanned)
        ts = np.arange(t, t + count, dtype=np.int64)
        ns = ts * j
        g = _gamma_array(ns, b)
        beyond = np.flatnonzero(g > upper_edge + 1e-9)
        stop = int(beyond[0]) if beyond.size else count
        ts, ns = ts[:stop], ns[:stop]

        if ns.size:
            if int(ns[-1]) <= VECTOR_MAX_N:
                approx = mu_bar_log_equal_parts(ns, j, p)
                candidates = np.flatnonzero(approx >= thr - CANDIDATE_TOLERANCE)
            else:
                candidates = np.arange(ns.size)
            for index in candidates:
                tt = int(ts[index])
                n = tt * j
                if not window_holds(n, j, b):
                    continue
                value = _scalar_mu_bar(n, tt, p)
                if value.log() >= thr:
                    logging.info(f"find_nj j={j} p={p}：n_j={n}，扫描 {scanned + int(index) + 1} 个倍数")
                    return _make_entry(j, tt, p, b, value)

        scanned += stop
        if stop < count:
            last_n = int((t + stop) * j)
            logging.info(f"find_nj j={j} p={p}：γ 越过 j+{WINDOW}（n={last_n}），n_j 不存在")
            raise SubsequenceNotFound(j, last_n)
        t += count


@dataclass(frozen=True)
class MinimalityReport:
    n_j: int
    holds_at_n_j: bool
    previous_n: int
    previous_window_ok: bool
    previous_threshold_ok: bool

    @property
    def minimal(self) -> bool:
        return self.holds_at_n_j and not (self.previous_window_ok and self.previous_threshold_ok)


def check_minimality(entry: SubsequenceEntry, p: ProbabilityLike) -> MinimalityReport:
    """独立地在 n_j 与 n_j − j 处重新检查两个条件。"""
    p = as_probability(p)
    b = _base(p)
    holds = conditions_hold(entry.n_j, entry.j, p)
    previous = entry.n_j - entry.j
    window_ok = previous >= entry.j and window_holds(previous, entry.j, b)
    threshold_ok = (previous >= entry.j
                    and _scalar_mu_bar(previous, previous // entry.j, p).log() >= threshold(entry.j))
    return MinimalityReport(entry.n_j, holds, previous, window_ok, threshold_ok)


@dataclass(frozen=True)
class NjVerification:
    j: int
    n_j: int
    divisible: bool
    gamma_gap: float
    gamma_recomputed_error: float
    threshold_ok: bool
    log_mu_bar_kj_minus_1: float
    below_inverse_j: bool
    k_step_sum_log: float
    minimal: bool


def verify_nj(entry: SubsequenceEntry, p: ProbabilityLike) -> NjVerification:
    p = as_probability(p)
    b = _base(p)
    recomputed = gamma(entry.n_j, b)
    lower = entry.mu_bar_at_kj_minus_1.log()
    if entry.k_j > 1:
        k_sum = geometric_sum_bound(entry.n_j, entry.k_j - 1, p).log()
    else:
        k_sum = float('-inf')
    return NjVerification(
        j=entry.j,
        n_j=entry.n_j,
        divisible=entry.n_j % entry.j == 0 and entry.n_j // entry.j == entry.k_j,
        gamma_gap=abs(entry.gamma_j - entry.j),
        gamma_recomputed_error=abs(recomputed - entry.gamma_j),
        threshold_ok=entry.mu_bar_at_kj.log() >= threshold(entry.j),
        log_mu_bar_kj_minus_1=lower,
        below_inverse_j=lower < -threshold(entry.j),
        k_step_sum_log=k_sum,
        minimal=check_minimality(entry, p).minimal,
    )


def _find_or_none(j: int, p: Fraction) -> Optional[SubsequenceEntry]:
    try:
        return find_nj(j, p)
    except SubsequenceNotFound as e:
        logging.info(f"subsequence.sweep：{e}")
    except (ScanBudgetExceeded, SizeGuardError) as e:
        logging.error(f"subsequence.sweep处理异常：{e}")
    return None


def sweep(j_min: int, j_max: int, p: ProbabilityLike, workers: Optional[int] = None,
          progress: bool = False) -> List[SubsequenceEntry]:
    """对 j_min..j_max 并行运行 find_nj，按 j 排序返回，跳过不存在的 j。"""
    p = as_probability(p)
    results = run_ordered(_find_or_none, range(j_min, j_max + 1), workers, p, progress=progress, desc='n_j')
    return [entry for entry in results if entry is not None]
