#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
异常定义模块

eqchrom 所有可预期的失败都以本模块中的异常表达，根类为 EqChromError。
参数越界类的异常同时继承 ValueError，便于调用方按惯例捕获。

异常一览
--------
- InvalidRangeError: 参数超出合法区间（m ∉ [0,N]、k ∉ [1,n]、d ∉ [0,f] 等）
- SizeGuardError: 穷举预言的规模保护（例如枚举要求 n ≤ 16）
- DomainError: 函数定义域错误（例如 γ(n) 要求 log_b n ≥ 1）
- HypothesisViolation: 违反 0 < p < 1 − 1/e² 的前提
- NonIntegralPartError: 要求 j = n/k 为整数的计算收到了非整除的 (n,k)
- ShapeMismatchError: 两个等分的 (n,k) 形状不一致
- VertexSetMismatchError: 等分与图的顶点集不一致
- SubsequenceNotFound: γ 窗口已越过，n_j 不存在
- ScanBudgetExceeded: 子序列扫描超出倍数预算
- SolverTimeout: 求解超时（与“不可行”严格区分）
- OracleMismatch: 预言校验不一致

命令行的退出码映射见 ``eqchrom.job.cli``。
"""

__author__ = 'myh '
__date__ = '2026/9/3 '


class EqChromError(Exception):
    pass


class InvalidRangeError(EqChromError, ValueError):
    pass


class SizeGuardError(EqChromError):
    pass


class DomainError(EqChromError, ValueError):
    pass


class HypothesisViolation(DomainError):
    pass


class NonIntegralPartError(DomainError):
    pass


class ShapeMismatchError(EqChromError, ValueError):
    pass


class VertexSetMismatchError(EqChromError, ValueError):
    pass


class SubsequenceNotFound(EqChromError):
    """n_j 不存在：扫描到 γ(tj) > j + 10 仍未满足阈值条件。"""

    def __init__(self, j, last_n=None):
        self.j = j
        self.last_n = last_n
        super().__init__(f"j={j} 的 n_j 不存在（扫描止于 n={last_n}）")


class ScanBudgetExceeded(EqChromError):
    def __init__(self, j, budget):
        self.j = j
        self.budget = budget
        super().__init__(f"j={j} 扫描超出预算 {budget} 个倍数")


class SolverTimeout(EqChromError):
    def __init__(self, time_limit, stage=''):
        self.time_limit = time_limit
        self.stage = stage
        super().__init__(f"求解超时（{time_limit} 秒）{stage}")


class OracleMismatch(EqChromError):
    pass
