#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
数值原语模块

本模块提供所有矩公式共用的算术原语：阶乘、二项式系数，以及支撑一阶矩与
二阶矩的超几何比值 C(N−drop, m) / C(N, m)。

核心概念
--------
- **LogValue**: 以自然对数表示的非负量（is_zero 标记精确的零）。计数与概率
  动辄 10^(10^9) 量级，全部在对数域内相乘相除；底为 b 的对数只在展示时换算。
- **精确值**: 整数使用 Python int，有理数使用 ``fractions.Fraction``
  （构造即约分，分母为正），供预言逐字比较。
- **log_factorial**: 两种模式。``exact_sum`` 逐项累加 ln i；``stirling`` 使用
  截断到 n^-7 项的 Stirling 级数，n ≥ 20 时绝对误差小于 1e-12。
- **log_binomial_ratio**: ln[C(N−drop,m)/C(N,m)]。短乘积直接累加 log1p，
  长乘积使用 log1p 形式的 Stirling 差分，不做 Taylor 截断，
  N ~ 10^17、drop ~ 10^10 时仍保持相对精度。

使用方式
--------
::

    from eqchrom.core.numerics import log_factorial, log_binomial_ratio

    log_factorial(10)                     # 15.104412573075516
    log_binomial_ratio(6, 3, 2).to_float()   # 0.2

注意事项
--------
- ``log_factorial(n)`` 不指定模式时 n < 20 用 exact_sum，否则用 stirling
- 向量化版本（``*_array``）服务于子序列的批量扫描，精度与标量版本相当，
  命中点仍由标量版本复核
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

import numpy as np
from scipy.special import gammaln

from eqchrom.core.errors import DomainError, InvalidRangeError

__author__ = 'myh '
__date__ = '2026/9/3 '

EXACT_SUM = 'exact_sum'
STIRLING = 'stirling'
PRECISION_MODES = (EXACT_SUM, STIRLING)

STIRLING_MIN_N = 20
# 短乘积直接累加的上限
DIRECT_PRODUCT_LIMIT = 4096

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

Number = Union[int, Fraction, float]


@dataclass(frozen=True)
class LogValue:
    """非负量的自然对数表示。

    Attributes:
        is_zero: 是否为精确的 0
        log_magnitude: 自然对数值，is_zero 时无意义（约定为 -inf）
    """
    is_zero: bool
    log_magnitude: float

    @classmethod
    def zero(cls) -> 'LogValue':
        return cls(True, float('-inf'))

    @classmethod
    def one(cls) -> 'LogValue':
        return cls(False, 0.0)

    @classmethod
    def from_log(cls, log_magnitude: float) -> 'LogValue':
        if log_magnitude == float('-inf'):
            return cls.zero()
        return cls(False, float(log_magnitude))

    @classmethod
    def of(cls, value: Number) -> 'LogValue':
        """由精确或浮点数值构造；大整数与分数不经过浮点转换。"""
        if value < 0:
            raise DomainError(f"LogValue 只表示非负量：{value}")
        if value == 0:
            return cls.zero()
        if isinstance(value, Fraction):
            return cls(False, math.log(value.numerator) - math.log(value.denominator))
        return cls(False, math.log(value))

    def __mul__(self, other: 'LogValue') -> 'LogValue':
        if self.is_zero or other.is_zero:
            return LogValue.zero()
        return LogValue(False, self.log_magnitude + other.log_magnitude)

    def __truediv__(self, other: 'LogValue') -> 'LogValue':
        if other.is_zero:
            raise ZeroDivisionError("LogValue 除以零")
        if self.is_zero:
            return LogValue.zero()
        return LogValue(False, self.log_magnitude - other.log_magnitude)

    def __pow__(self, exponent: float) -> 'LogValue':
        if self.is_zero:
            if exponent <= 0:
                raise ZeroDivisionError("0 的非正次幂")
            return LogValue.zero()
        return LogValue(False, self.log_magnitude * exponent)

    def __lt__(self, other: 'LogValue') -> bool:
        return self.log() < other.log()

    def __le__(self, other: 'LogValue') -> bool:
        return self.log() <= other.log()

    def log(self) -> float:
        return float('-inf') if self.is_zero else self.log_magnitude

    def log_base(self, b: float) -> float:
        if self.is_zero:
            return float('-inf')
        return self.log_magnitude / math.log(b)

    def to_float(self) -> float:
        if self.is_zero:
            return 0.0
        return math.exp(self.log_magnitude)

    def __str__(self) -> str:
        return "0" if self.is_zero else f"exp({self.log_magnitude!r})"


def stirling_correction(x: float) -> float:
    """ln x! 的 Stirling 级数中 1/x 幂次的修正项，截断到 x^-7。"""
    inv = 1.0 / x
    inv2 = inv * inv
    return inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))


@lru_cache(maxsize=4096)
def _log_factorial_exact_sum(n: int) -> float:
    if n < 2:
        return 0.0
    return math.fsum(np.log(np.arange(2, n + 1, dtype=np.float64)))


def log_factorial(n: int, precision_mode: Optional[str] = None) -> float:
    """返回 ln(n!)。

    Args:
        n: 非负整数
        precision_mode: ``exact_sum`` / ``stirling``；None 时按 n 自动选择

    Raises:
        InvalidRangeError: n < 0 或模式非法
        DomainError: stirling 模式下 n < 20
    """
    if n < 0:
        raise InvalidRangeError(f"log_factorial 要求 n ≥ 0：{n}")
    if precision_mode is None:
        precision_mode = EXACT_SUM if n < STIRLING_MIN_N else STIRLING
    if precision_mode == EXACT_SUM:
        return _log_factorial_exact_sum(int(n))
    if precision_mode == STIRLING:
        if n < STIRLING_MIN_N:
            raise DomainError(f"stirling 模式要求 n ≥ {STIRLING_MIN_N}，请使用 exact_sum：{n}")
        x = float(n)
        return (x + 0.5) * math.log(x) - x + _HALF_LOG_2PI + stirling_correction(x)
    raise InvalidRangeError(f"未知的精度模式：{precision_mode}")


def exact_binomial(n: int, k: int) -> int:
    if n < 0:
        raise InvalidRangeError(f"exact_binomial 要求 n ≥ 0：{n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def exact_binomial_ratio(N: int, m: int, drop: int) -> Fraction:
    """C(N−drop, m) / C(N, m) 的精确有理值。"""
    _check_ratio_args(N, m, drop)
    if m > N - drop:
        return Fraction(0)
    return Fraction(math.comb(N - drop, m), math.comb(N, m))


def log_factorial_ratio(a: int, h: int) -> float:
    """ln((a+h)!/a!)，a ≥ 0，h ≥ 0。"""
    if a < 0 or h < 0:
        raise InvalidRangeError(f"log_factorial_ratio 要求 a, h ≥ 0：a={a} h={h}")
    if h == 0:
        return 0.0
    if h <= DIRECT_PRODUCT_LIMIT:
        return math.fsum(math.log(a + i) for i in range(1, h + 1))
    if a < STIRLING_MIN_N:
        return log_factorial(a + h) - log_factorial(a)
    fa = float(a)
    top = float(a + h)
    return ((fa + 0.5) * math.log1p(h / fa) + h * math.log(top) - h
            + stirling_correction(top) - stirling_correction(fa))


def _check_ratio_args(N: int, m: int, drop: int) -> None:
    if N < 0 or m < 0 or m > N:
        raise InvalidRangeError(f"要求 0 ≤ m ≤ N：N={N} m={m}")
    if drop < 0:
        raise InvalidRangeError(f"要求 drop ≥ 0：{drop}")


def log_binomial_ratio(N: int, m: int, drop: int) -> LogValue:
    """ln[C(N−drop, m) / C(N, m)]。

    m > N−drop 时返回零值。
    """
    _check_ratio_args(N, m, drop)
    if m > N - drop:
        return LogValue.zero()
    if drop == 0 or m == 0:
        return LogValue.one()
    if drop <= DIRECT_PRODUCT_LIMIT:
        # C(N−drop,m)/C(N,m) = Π_{i<drop} (1 − m/(N−i))
        return LogValue(False, math.fsum(math.log1p(-m / (N - i)) for i in range(drop)))
    A = N - m - drop
    B = N - drop
    if A < STIRLING_MIN_N:
        return LogValue(False, log_factorial_ratio(A, drop) - log_factorial_ratio(B, drop))
    fa, fb, fd = float(A), float(B), float(drop)
    value = (fd * math.log1p(-m / N)
             + (fa + 0.5) * math.log1p(fd / fa) - (fb + 0.5) * math.log1p(fd / fb)
             + (stirling_correction(float(N - m)) - stirling_correction(fa))
             - (stirling_correction(float(N)) - stirling_correction(fb)))
    return LogValue(False, value)


def log_factorial_array(n: np.ndarray) -> np.ndarray:
    """逐元素 ln(n!)，基于 scipy 的 gammaln。"""
    return gammaln(np.asarray(n, dtype=np.float64) + 1.0)


def _stirling_correction_array(x: np.ndarray) -> np.ndarray:
    inv = 1.0 / x
    inv2 = inv * inv
    return inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))


def log_binomial_ratio_array(N: np.ndarray, m: np.ndarray, drop: np.ndarray) -> np.ndarray:
    """log_binomial_ratio 的向量化版本，零值返回 -inf。

    参数为等长的整数数组（int64），调用方保证 0 ≤ m ≤ N、drop ≥ 0。
    """
    N = np.asarray(N, dtype=np.int64)
    m = np.asarray(m, dtype=np.int64)
    drop = np.asarray(drop, dtype=np.int64)
    A_int = N - m - drop
    out = np.full(N.shape, -np.inf, dtype=np.float64)
    alive = A_int >= 0
    if not np.any(alive):
        return out

    fN = N.astype(np.float64)
    fm = m.astype(np.float64)
    fd = drop.astype(np.float64)
    fa = A_int.astype(np.float64)
    fb = fN - fd

    large = alive & (A_int >= STIRLING_MIN_N) & (drop > 0)
    if np.any(large):
        a, b_, d_, nn, mm = fa[large], fb[large], fd[large], fN[large], fm[large]
        out[large] = (d_ * np.log1p(-mm / nn)
                      + (a + 0.5) * np.log1p(d_ / a) - (b_ + 0.5) * np.log1p(d_ / b_)
                      + (_stirling_correction_array(nn - mm) - _stirling_correction_array(a))
                      - (_stirling_correction_array(nn) - _stirling_correction_array(b_)))
    small = alive & ~large
    if np.any(small):
        out[small] = (gammaln(fN[small] - fm[small] + 1.0) - gammaln(fa[small] + 1.0)
                      - gammaln(fN[small] + 1.0) + gammaln(fb[small] + 1.0))
    return out
