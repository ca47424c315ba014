#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
二阶矩模块

X_{n,k} 为合法有序 k-等分的个数。本模块计算 E[X²]/E[X]² 的精确值以及
控制它所需的各个量。

核心概念
--------
- **S_r**: 一对重叠序列为 r（共享 d 条禁用边）的等分同时合法的概率，
  除以单个等分合法概率的平方：
  S_r = C(N−2f+d,m)·C(N,m) / C(N−f,m)²；
  渐近式为 b^d·exp(−p(d²+2f²−4df)/(2qN))
- **Q_r**: P_r/P²，重叠序列为 r 的有序等分对所占比例。E[X²]/E[X]² = Σ_r Q_r·S_r
- **常数**: c = ½(1 − ln b/2)，c̃ = min(½(1/ln b − ½), ½)
- **T_i**: e^{ρi}·b^{C(i,2)}·k²·j!² / (n^i·i!·(j−i)!²)，i = 2..j，
  i ≥ 3 的项应当不超过 n^{-c̃}
- **穷举预言**: ``pair_enum`` 对全部有序等分对直接计算禁用边并集缺失的概率；
  ``overlap_decomposition`` 先按重叠序列普查 P_r 再乘以对应概率。
  两者必须得到逐字相等的有理数

使用方式
--------
::

    from eqchrom.core.secondmoment import ratio_bruteforce, PAIR_ENUM
    report = ratio_bruteforce(4, 2, "1/2", PAIR_ENUM)
    report.ratio      # Fraction(5, 3)

注意事项
--------
- 本模块要求 j = n/k 为整数的计算（t_sequence、r1_sum_estimate）会拒绝
  不整除的 (n,k)
- Q_r 不单独出现在精确计算中，贡献始终以 P_r × 概率的形式累加
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from eqchrom.core.errors import (DomainError, InvalidRangeError,
                                 NonIntegralPartError, SizeGuardError)
from eqchrom.core.moments import (MomentParams, ProbabilityLike, as_probability,
                                  check_hypothesis, gamma)
from eqchrom.core.numerics import LogValue, exact_binomial_ratio, log_binomial_ratio, log_factorial
from eqchrom.core.partitions import (OverlapSequence, count_pairs_with_overlap, enumerate_equipartitions,
                                     forbidden_mask, overlap_from_shared_mask, EXHAUSTIVE_CENSUS_MAX_N)
from eqchrom.lib.run_template import run_ordered

__author__ = 'myh '
__date__ = '2026/9/6 '

EXACT = 'exact'
ASYMPTOTIC = 'asymptotic'
PAIR_ENUM = 'pair_enum'
OVERLAP_DECOMPOSITION = 'overlap_decomposition'
METHODS = (PAIR_ENUM, OVERLAP_DECOMPOSITION)

RATIO_MAX_N = 10


def _check_d(params: MomentParams, d: int) -> None:
    if d < 0 or d > params.f:
        raise InvalidRangeError(f"d 必须在 [0, f={params.f}] 内：{d}")


def s_value(params: MomentParams, d: int, mode: str = EXACT) -> LogValue:
    _check_d(params, d)
    f = params.f
    if mode == EXACT:
        joint = log_binomial_ratio(params.N, params.m, 2 * f - d)
        single = log_binomial_ratio(params.N, params.m, f)
        if joint.is_zero:
            return LogValue.zero()
        return joint / (single * single)
    if mode == ASYMPTOTIC:
        p = float(params.p)
        q = float(params.q)
        correction = -p * (d * d + 2 * f * f - 4 * d * f) / (2.0 * q * params.N) if params.N else 0.0
        return LogValue.from_log(d * params.ln_b + correction)
    raise InvalidRangeError(f"未知的 S 计算模式：{mode}")


def exact_s_value(params: MomentParams, d: int) -> Fraction:
    """S_r 的精确有理值；单个等分不可能合法时无定义。"""
    _check_d(params, d)
    single = exact_binomial_ratio(params.N, params.m, params.f)
    if single == 0:
        raise DomainError(f"n={params.n} k={params.k} 的单个等分合法概率为 0，S 无定义")
    return exact_binomial_ratio(params.N, params.m, 2 * params.f - d) / (single * single)


@dataclass(frozen=True)
class SecondMomentConstants:
    c: float
    c_tilde: float
    j: Optional[int] = None
    T: Tuple[float, ...] = ()


def constants(p: ProbabilityLike) -> SecondMomentConstants:
    p = as_probability(p)
    check_hypothesis(p)
    ln_b = -math.log(float(1 - p))
    c = 0.5 * (1.0 - ln_b / 2.0)
    c_tilde = min(0.5 * (1.0 / ln_b - 0.5), 0.5)
    return SecondMomentConstants(c, c_tilde)


@dataclass(frozen=True)
class TSequence:
    """T_2..T_j 的对数值及与 −c̃ 比较用的最大值。"""
    rho: float
    i: Tuple[int, ...]
    log_T: Tuple[float, ...]
    max_log_n_T: Optional[float]
    t2_closed_form_log: float
    t3_bound_log: Optional[float]

    @property
    def T(self) -> Tuple[float, ...]:
        return tuple(math.exp(x) if x <= 700 else float('inf') for x in self.log_T)


def _integral_j(params: MomentParams) -> int:
    if params.j is None:
        raise NonIntegralPartError(f"要求 k 整除 n：n={params.n} k={params.k}")
    return params.j


def log_t_term(params: MomentParams, rho: float, i: int) -> float:
    j = _integral_j(params)
    n, k = params.n, params.k
    return (rho * i + math.comb(i, 2) * params.ln_b + 2.0 * math.log(k) + 2.0 * log_factorial(j)
            - i * math.log(n) - log_factorial(i) - 2.0 * log_factorial(j - i))


def t_sequence(params: MomentParams, rho: float) -> TSequence:
    j = _integral_j(params)
    if not 0.0 <= rho <= 1.0:
        raise InvalidRangeError(f"ρ 必须在 [0,1] 内：{rho}")
    if j < 2:
        raise InvalidRangeError(f"T 序列要求 j ≥ 2：{j}")
    indices = tuple(range(2, j + 1))
    logs = tuple(log_t_term(params, rho, i) for i in indices)
    ln_n = math.log(params.n)
    tail = [x / ln_n for i, x in zip(indices, logs) if i >= 3]
    max_log_n = max(tail) if tail else None
    t2_closed = 2.0 * rho + math.log(params.b / 2.0) + 2.0 * math.log(j - 1)
    t3_bound = None
    if j >= 3:
        t3_bound = (3.0 + 3.0 * params.ln_b + 2.0 * math.log(params.k) + 6.0 * math.log(j)
                    - math.log(6.0) - 3.0 * ln_n)
    return TSequence(rho, indices, logs, max_log_n, t2_closed, t3_bound)


def r1_sum_estimate(params: MomentParams) -> float:
    """exp(−(b/2)(j−1)²·(1 − e^{2/ln³ n}))，随 n 增大从上方趋于 1。"""
    j = _integral_j(params)
    ln_n = math.log(params.n)
    exponent = -(params.b / 2.0) * (j - 1) ** 2 * (-math.expm1(2.0 / ln_n ** 3))
    return math.exp(exponent)


def r3_count_bound(R3: int, n: int, b: float) -> LogValue:
    """(2e·log_b n)^{R3} 的对数表示。"""
    if R3 < 0:
        raise InvalidRangeError(f"R3 必须非负：{R3}")
    if R3 == 0:
        return LogValue.one()
    return LogValue(False, R3 * math.log(2.0 * math.e * math.log(n) / math.log(b)))


def composition_count(R3: int, j: int) -> int:
    """穷举 (r_3, …, r_j) 非负且和为 R3 的方案数。"""
    if R3 < 0 or j < 3:
        raise InvalidRangeError(f"composition_count 要求 R3 ≥ 0 且 j ≥ 3：R3={R3} j={j}")

    def _count(slots: int, remaining: int) -> int:
        if slots == 1:
            return 1
        return sum(_count(slots - 1, remaining - first) for first in range(remaining + 1))

    return _count(j - 2, R3)


@dataclass
class SecondMomentReport:
    ratio: Fraction
    by_overlap: Dict[OverlapSequence, Fraction]
    method: str
    second_moment: Fraction
    first_moment: Fraction
    pair_counts: Dict[OverlapSequence, int] = field(default_factory=dict)
    partition_count: int = 0


def _shared_masks(first_mask: int, masks: np.ndarray) -> Counter:
    """按与 first_mask 共有的禁用边掩码统计。"""
    shared, counts = np.unique(masks & np.uint64(first_mask), return_counts=True)
    return Counter(dict(zip((int(s) for s in shared), counts.tolist())))


def ratio_bruteforce(n: int, k: int, p: ProbabilityLike, method: str = OVERLAP_DECOMPOSITION,
                     exhaustive: bool = False, workers: Optional[int] = None) -> SecondMomentReport:
    """E[X²]/E[X]² 的精确值。

    Args:
        method: ``pair_enum`` 或 ``overlap_decomposition``
        exhaustive: True 时两种方法都遍历全部有序对（n ≤ 8），否则固定第一个等分再乘以 P
        workers: 并行线程数
    """
    if n > RATIO_MAX_N:
        raise SizeGuardError(f"二阶矩穷举要求 n ≤ {RATIO_MAX_N}：{n}")
    if exhaustive and n > EXHAUSTIVE_CENSUS_MAX_N:
        raise SizeGuardError(f"穷举全部有序对要求 n ≤ {EXHAUSTIVE_CENSUS_MAX_N}：{n}")
    params = MomentParams.build(n, k, p)
    N, m, f = params.N, params.m, params.f
    single = exact_binomial_ratio(N, m, f)

    if method == PAIR_ENUM:
        masks = np.array([forbidden_mask(ep) for ep in enumerate_equipartitions(n, k)], dtype=np.uint64)
        P = len(masks)
        firsts = masks.tolist() if exhaustive else [int(masks[0])]
        tally: Counter = Counter()
        for partial in run_ordered(_shared_masks, firsts, workers, masks, reraise=(Exception,)):
            tally.update(partial)
        scale = 1 if exhaustive else P
        pair_counts: Dict[OverlapSequence, int] = {}
        by_overlap: Dict[OverlapSequence, Fraction] = {}
        for shared, count in sorted(tally.items()):
            d = bin(shared).count('1')
            r = overlap_from_shared_mask(shared, n)
            if r.d != d:
                raise ArithmeticError(f"共有禁用边 {d} 与重叠序列 {r.label()} 不一致")
            pair_counts[r] = pair_counts.get(r, 0) + scale * count
            by_overlap[r] = by_overlap.get(r, Fraction(0)) + scale * count * exact_binomial_ratio(N, m, 2 * f - d)
        second = sum(by_overlap.values(), Fraction(0))
    elif method == OVERLAP_DECOMPOSITION:
        pair_counts = count_pairs_with_overlap(n, k, exhaustive=exhaustive, workers=workers)
        P = math.isqrt(sum(pair_counts.values()))
        contributions = {r: count * exact_binomial_ratio(N, m, 2 * f - r.d) for r, count in pair_counts.items()}
        second = sum(contributions.values(), Fraction(0))
        by_overlap = contributions
    else:
        raise InvalidRangeError(f"未知的二阶矩方法：{method}")

    first = P * single
    if first == 0:
        raise DomainError(f"n={n} k={k} p={params.p} 时 E[X] = 0，比值无定义")
    denominator = first * first
    if by_overlap:
        by_overlap = {r: value / denominator for r, value in by_overlap.items()}
    ratio = second / denominator
    logging.info(f"ratio_bruteforce n={n} k={k} p={params.p} {method}：{ratio}")
    return SecondMomentReport(ratio, by_overlap, method, second, first, pair_counts, P)


def overlap_contributions(report: SecondMomentReport) -> pd.DataFrame:
    """每种重叠序列的 Q_r、S_r 与 Q_r·S_r，按 d 排序。"""
    if not report.pair_counts:
        raise InvalidRangeError("overlap_contributions 需要带重叠序列分组的报告")
    P2 = report.partition_count * report.partition_count
    rows: List[dict] = []
    for r, count in report.pair_counts.items():
        contribution = report.by_overlap[r]
        q_r = Fraction(count, P2)
        rows.append({'profile': r.label(), 'v': r.v, 'rho': float(r.rho), 'd': r.d, 'r3_sum': r.r3_sum,
                     'pair_count': count, 'q_r': float(q_r), 's_r': float(contribution / q_r),
                     'contribution': float(contribution)})
    data = pd.DataFrame(rows)
    return data.sort_values(by=['d', 'profile'], kind='mergesort').reset_index(drop=True)


def high_overlap_bound(params: MomentParams, mu_bar_log: float, d: Optional[int] = None) -> float:
    """高重叠区间贡献的量级 (1/μ̄)·exp(−p((2f−d)²−f²)/(2qN)) 的自然对数，d 默认取 f。"""
    f = params.f
    if d is None:
        d = f
    _check_d(params, d)
    p = float(params.p)
    q = float(params.q)
    return -mu_bar_log - p * ((2 * f - d) ** 2 - f * f) / (2.0 * q * params.N)


def divisible_point(n: int, p: ProbabilityLike) -> Tuple[int, int]:
    """取 j = round(γ(n))、k = round(n/j)，返回 (j·k, k)，即 n 附近使 k 整除的点。"""
    p = as_probability(p)
    b = float(1 / (1 - p))
    j = max(2, int(round(gamma(n, b))))
    k = max(1, int(round(n / j)))
    return j * k, k
