#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
一阶矩模块

本模块计算 G(n,m) 中合法等分染色个数的期望，以及围绕它的各项数值诊断。

核心概念
--------
- **参数**: p 为精确有理数，q = 1−p，b = 1/q，N = C(n,2)，m = ⌊pN⌋，
  ε = pN − m ∈ [0,1]
- **γ(n)**: 2·log_b n − 2·log_b log_b n − 2·log_b 2，即份大小的临界值
- **μ_{n,k}**: 合法有序 k-等分的期望个数 P_{n,k}·C(N−f,m)/C(N,m)
- **μ̄_{n,k}**: 合法无序等分的期望个数 μ/(k_L!·k_S!)

计算模式
--------
- ``exact``: 精确有理数（n ≤ 60）
- ``log_domain``: 用对数阶乘计算同一乘积，不做 Taylor 截断，子序列扫描使用
- ``asymptotic``: P·q^f·exp(−f²p/(2qN))，只用于度量渐近式的误差项

诊断
----
- ``rate_diagnostic``: k = round(n/(γ+x)) 处 log_b(μ̄)/n 与 −x/2 的差
- ``step_diagnostics``: k→k+1 时 μ、μ̄ 的变化与 n→n+1 时 μ 的变化
- ``geometric_sum_bound``: 用相邻两项比值做几何控制，估计 Σ_{k ≤ k_top} μ̄_{n,k}

注意事项
--------
- p 必须满足 0 < p < 1 − 1/e²（即 ln b < 2），探索性计算可以传
  ``allow_outside=True`` 放开上界
- γ 在 log_b n < 1 时无定义，此时 MomentParams.gamma 为 None
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, Optional, Sequence, Union

import numpy as np

from eqchrom.core.errors import DomainError, HypothesisViolation, InvalidRangeError, SizeGuardError
from eqchrom.core.numerics import (LogValue, exact_binomial_ratio, log_binomial_ratio,
                                   log_binomial_ratio_array, log_factorial, log_factorial_array)
from eqchrom.core.partitions import (EquipartitionShape, count_partitions, enumerate_equipartitions,
                                     forbidden_edges, shape)

__author__ = 'myh '
__date__ = '2026/9/5 '

EXACT = 'exact'
LOG_DOMAIN = 'log_domain'
ASYMPTOTIC = 'asymptotic'
MODES = (EXACT, LOG_DOMAIN, ASYMPTOTIC)

EXACT_MU_MAX_N = 60
BRUTEFORCE_MAX_N = 10
P_UPPER = 1.0 - math.exp(-2.0)
REGIME_WINDOW = 10.0
VECTOR_MAX_N = 3_000_000_000

ProbabilityLike = Union[str, int, Fraction]


def as_probability(p: ProbabilityLike) -> Fraction:
    """把 "1/2"、Fraction 或整数转成精确有理数；拒绝浮点数。"""
    if isinstance(p, float):
        raise InvalidRangeError(f"p 必须是精确分数，不接受浮点数：{p}")
    try:
        value = Fraction(p)
    except (ValueError, ZeroDivisionError) as e:
        raise InvalidRangeError(f"无法解析 p：{p}") from e
    if not 0 <= value <= 1:
        raise InvalidRangeError(f"p 必须在 [0,1] 内：{p}")
    return value


def check_hypothesis(p: Fraction, allow_outside: bool = False) -> None:
    if not 0 < p < 1:
        raise InvalidRangeError(f"p 必须在 (0,1) 内：{p}")
    if not allow_outside and float(p) >= P_UPPER:
        raise HypothesisViolation(f"p={p} 不满足 p < 1 − 1/e² ≈ {P_UPPER:.6f}")


def gamma(n: int, b: float) -> float:
    """γ(n) = 2·log_b n − 2·log_b log_b n − 2·log_b 2。"""
    if n < 1 or b <= 1:
        raise DomainError(f"γ 要求 n ≥ 1 且 b > 1：n={n} b={b}")
    ln_b = math.log(b)
    lb_n = math.log(n) / ln_b
    if lb_n < 1.0 - 1e-12:
        raise DomainError(f"γ 要求 log_b n ≥ 1：n={n} b={b}")
    lb_n = max(lb_n, 1.0)
    return 2.0 * lb_n - 2.0 * math.log(lb_n) / ln_b - 2.0 * math.log(2.0) / ln_b


@dataclass(frozen=True)
class MomentParams:
    n: int
    k: int
    p: Fraction
    q: Fraction
    b: float
    N: int
    m: int
    epsilon: Fraction
    gamma: Optional[float]
    shape: EquipartitionShape
    j: Optional[int]

    @classmethod
    def build(cls, n: int, k: int, p: ProbabilityLike, allow_outside: bool = False) -> 'MomentParams':
        p = as_probability(p)
        check_hypothesis(p, allow_outside)
        s = shape(n, k)
        q = 1 - p
        N = comb(n, 2)
        m = (p.numerator * N) // p.denominator
        epsilon = p * N - m
        b = q.denominator / q.numerator
        try:
            g = gamma(n, b)
        except DomainError:
            g = None
        return cls(n, k, p, q, b, N, m, epsilon, g, s, s.j)

    @property
    def ln_b(self) -> float:
        return math.log(self.b)

    @property
    def f(self) -> int:
        return self.shape.f

    def unordered_divisor_log(self) -> float:
        return log_factorial(self.shape.k_large) + log_factorial(self.shape.k_small)


@dataclass(frozen=True)
class MomentResult:
    mu: LogValue
    mu_bar: LogValue
    mode: str
    exact_mu: Optional[Fraction] = None
    exact_mu_bar: Optional[Fraction] = None


def mu(params: MomentParams, mode: str = LOG_DOMAIN) -> MomentResult:
    """合法等分的期望个数 μ 与 μ̄。"""
    s = params.shape
    if mode == EXACT:
        if params.n > EXACT_MU_MAX_N:
            raise SizeGuardError(f"精确 μ 要求 n ≤ {EXACT_MU_MAX_N}：{params.n}")
        count = count_partitions(params.n, params.k, exact=True)
        exact_mu = count.exact * exact_binomial_ratio(params.N, params.m, s.f)
        exact_mu_bar = exact_mu / (factorial(s.k_large) * factorial(s.k_small))
        return MomentResult(LogValue.of(exact_mu), LogValue.of(exact_mu_bar), EXACT, exact_mu, exact_mu_bar)

    log_p = count_partitions(params.n, params.k, exact=False).log
    if mode == LOG_DOMAIN:
        mu_value = log_p * log_binomial_ratio(params.N, params.m, s.f)
    elif mode == ASYMPTOTIC:
        q = float(params.q)
        p = float(params.p)
        log_prob = s.f * math.log(q) - (s.f * s.f * p) / (2.0 * q * params.N) if params.N else 0.0
        mu_value = log_p * LogValue.from_log(log_prob)
    else:
        raise InvalidRangeError(f"未知的计算模式：{mode}")
    mu_bar_value = mu_value / LogValue.from_log(params.unordered_divisor_log())
    return MomentResult(mu_value, mu_bar_value, mode)


@lru_cache(maxsize=256)
def _forbidden_histogram(n: int, k: int) -> Dict[int, int]:
    """枚举全部有序等分，按禁用边数统计个数。"""
    hist: Dict[int, int] = {}
    for partition in enumerate_equipartitions(n, k):
        f = len(forbidden_edges(partition))
        hist[f] = hist.get(f, 0) + 1
    return hist


def mu_bruteforce(n: int, k: int, p: ProbabilityLike) -> Fraction:
    """逐个等分累加 C(N−f,m)/C(N,m) 得到的 μ（独立预言）。"""
    if n > BRUTEFORCE_MAX_N:
        raise SizeGuardError(f"穷举 μ 要求 n ≤ {BRUTEFORCE_MAX_N}：{n}")
    p = as_probability(p)
    N = comb(n, 2)
    m = (p.numerator * N) // p.denominator
    total = Fraction(0)
    for f, count in sorted(_forbidden_histogram(n, k).items()):
        total += count * exact_binomial_ratio(N, m, f)
    return total


def mu_bar_log_equal_parts(n_values: Sequence[int], j: int, p: ProbabilityLike) -> np.ndarray:
    """n = t·j、k = t（所有份大小为 j）时 ln μ̄ 的向量化计算。"""
    p = as_probability(p)
    n = np.asarray(n_values, dtype=np.int64)
    if n.size and int(n.max()) > VECTOR_MAX_N:
        raise SizeGuardError(f"向量化 μ̄ 要求 n ≤ {VECTOR_MAX_N}（N 须在 int64 内）")
    if np.any(n % j):
        raise InvalidRangeError(f"n 必须是 j={j} 的倍数")
    t = n // j
    N = n * (n - 1) // 2
    f = t * (j * (j - 1) // 2)
    limit = np.iinfo(np.int64).max // max(p.numerator, 1)
    if np.any(N > limit):
        m = np.array([(p.numerator * int(x)) // p.denominator for x in N], dtype=np.int64)
    else:
        m = (p.numerator * N) // p.denominator
    log_p = log_factorial_array(n) - t * log_factorial(j) - log_factorial_array(t)
    return log_p + log_binomial_ratio_array(N, m, f)


@dataclass(frozen=True)
class RateReport:
    n: int
    x_input: float
    k: int
    x_realized: float
    mu_bar_log_b_per_n: float
    prediction: float
    slack: float


def rate_diagnostic(n: int, x: float, p: ProbabilityLike) -> RateReport:
    """k = round(n/(γ+x)) 处的 log_b(μ̄)/n，与按实际 x 计算的 −x/2 对比。"""
    p = as_probability(p)
    check_hypothesis(p)
    b = float(1 / (1 - p))
    g = gamma(n, b)
    k = int(round(n / (g + x)))
    if k < 1 or k > n:
        raise DomainError(f"n={n} x={x} 得到的 k={k} 不在 [1,n] 内")
    params = MomentParams.build(n, k, p)
    value = mu(params, LOG_DOMAIN).mu_bar.log_base(b) / n
    x_realized = n / k - g
    prediction = -x_realized / 2.0
    return RateReport(n, x, k, x_realized, value, prediction, value - prediction)


@dataclass(frozen=True)
class StepReport:
    n: int
    k: int
    outside_regime: bool
    partition_step_log: float
    mu_step_log: float
    mu_step_bound_log: float
    mu_step_margin: float
    mu_bar_step_log: float
    mu_bar_step_band: float
    vertex_step_log: float
    vertex_step_reference: float
    vertex_step_diff: float


def step_diagnostics(n: int, k: int, p: ProbabilityLike) -> StepReport:
    """k→k+1 与 n→n+1 时一阶矩的变化，全部为自然对数。"""
    if k < 1 or k + 1 > n:
        raise InvalidRangeError(f"step_diagnostics 要求 1 ≤ k < n：n={n} k={k}")
    p = as_probability(p)
    base = MomentParams.build(n, k, p)
    more_parts = MomentParams.build(n, k + 1, p)
    more_vertices = MomentParams.build(n + 1, k, p)
    if base.gamma is None:
        raise DomainError(f"n={n} 太小，γ 无定义")
    outside = abs(n / k - base.gamma) > REGIME_WINDOW
    if outside:
        logging.info(f"step_diagnostics：n={n} k={k} 不在 k = n/(γ+O(1)) 区间内")

    r_base = mu(base, LOG_DOMAIN)
    r_parts = mu(more_parts, LOG_DOMAIN)
    r_vertices = mu(more_vertices, LOG_DOMAIN)

    partition_step = (count_partitions(n, k + 1, exact=False).log.log()
                      - count_partitions(n, k, exact=False).log.log())
    mu_step = r_parts.mu.log() - r_base.mu.log()
    bound = (n * n / (2.0 * k * (k + 1)) - n / (2.0 * k)) * base.ln_b
    mu_bar_step = r_parts.mu_bar.log() - r_base.mu_bar.log()
    band = mu_bar_step / (math.log(n) * math.log(math.log(n)))
    vertex_step = r_vertices.mu.log() - r_base.mu.log()
    reference = math.log(math.log(n) / n)
    return StepReport(n, k, outside, partition_step, mu_step, bound, mu_step - bound,
                           mu_bar_step, band, vertex_step, reference, vertex_step - reference)


def geometric_sum_bound(n: int, k_top: int, p: ProbabilityLike) -> LogValue:
    """Σ_{k ≤ k_top} μ̄_{n,k} 的几何控制估计：μ̄_{k_top}/(1 − ρ)，ρ 为 k_top−1 与 k_top 的比值。

    比值不小于 1 时无法控制，返回 +∞。
    """
    if k_top < 1 or k_top > n:
        raise InvalidRangeError(f"k_top 必须在 [1,n] 内：{k_top}")
    top = mu(MomentParams.build(n, k_top, p), LOG_DOMAIN).mu_bar
    if k_top == 1 or top.is_zero:
        return top
    below = mu(MomentParams.build(n, k_top - 1, p), LOG_DOMAIN).mu_bar
    if below.is_zero:
        return top
    step = below.log() - top.log()
    if step >= 0:
        logging.warning(f"geometric_sum_bound：n={n} k={k_top} 处 μ̄ 不随 k 递增，几何控制失效")
        return LogValue(False, float('inf'))
    return LogValue(False, top.log() - math.log1p(-math.exp(step)))
