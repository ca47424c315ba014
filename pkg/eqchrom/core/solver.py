#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
精确染色求解模块

本模块在小规模图上精确计算色数 χ、等分色数 χ_= 和等分染色阈值 χ*_=，
并提供一个随机贪心上界用于大规模蒙特卡罗实验。

核心概念
--------
- **等分 k-染色**: 合法染色且各色类大小相差不超过 1，即恰好 k_L = n mod k 个色类
  大小为 ⌈n/k⌉，其余为 ⌊n/k⌋
- **可行性非单调**: k 色可行不代表 k+1 色可行（K_{3,3}：2 可行，3 不可行，4 可行），
  因此 χ_= 必须从下界起逐个 k 检查，不能二分
- **χ*_=**: 使所有 l ≥ k 都可行的最小 k。Hajnal–Szemerédi 定理保证 l ≥ Δ+1 时都可行，
  所以只需从 min(n, Δ+1) 向下扫描

搜索策略
--------
- 顶点顺序固定：度数降序，度数相同按编号升序，保证搜索树可复现
- 色类容量：已达 ⌈n/k⌉ 的色类个数记在计数器里，O(1) 判断能否再出现大色类
- 对称性破缺：每个顶点最多尝试一个当前为空的色类
- 前向检查：每个未着色顶点至少有一个可放入的色类
- 容量剪枝：每个色类还能接收的未着色顶点数不少于它距 ⌊n/k⌋ 的缺口
- 超时抛出 SolverTimeout，与“不可行”（返回 None）严格区分

使用方式
--------
::

    from eqchrom.core.graphs import complete_bipartite_graph
    from eqchrom.core.solver import equitable_chromatic_number, equitable_k_feasible

    g = complete_bipartite_graph(3, 3)
    equitable_k_feasible(g, 3)          # None
    k, witness = equitable_chromatic_number(g)   # k = 2
"""

import logging
import math
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, TextIO, Tuple, Union

import networkx as nx
import pandas as pd

from eqchrom.core.errors import InvalidRangeError, SizeGuardError, SolverTimeout, VertexSetMismatchError
from eqchrom.core.graphs import Graph, SeedSpec
from eqchrom.core.partitions import enumerate_equipartitions, forbidden_mask
from eqchrom.lib import csv_store

__author__ = 'myh '
__date__ = '2026/9/8 '

EXHAUSTIVE_MAX_N = 9
GREEDY_RESTARTS = 64
_CLOCK_STRIDE = 256


@dataclass(frozen=True)
class ColoringWitness:
    assignment: Tuple[int, ...]
    k: int
    class_sizes: Tuple[int, ...]

    @classmethod
    def from_assignment(cls, assignment: Sequence[int], k: int) -> 'ColoringWitness':
        sizes = [0] * k
        for c in assignment:
            sizes[c] += 1
        return cls(tuple(assignment), k, tuple(sorted(sizes, reverse=True)))

    def is_proper(self, g: Graph) -> bool:
        if len(self.assignment) != g.n:
            raise VertexSetMismatchError(f"染色长度 {len(self.assignment)} 与顶点数 {g.n} 不一致")
        return all(self.assignment[u] != self.assignment[v] for u, v in g.edges)

    def is_balanced(self) -> bool:
        return not self.class_sizes or self.class_sizes[0] - self.class_sizes[-1] <= 1

    def is_valid(self, g: Graph) -> bool:
        return self.is_proper(g) and self.is_balanced()


def vertex_order(g: Graph) -> List[int]:
    degrees = g.degrees()
    return sorted(range(g.n), key=lambda v: (-degrees[v], v))


class _ColouringSearch(object):
    """带容量约束的 k-染色深度优先搜索。equitable=False 时退化为普通 k-染色。"""

    def __init__(self, g: Graph, k: int, equitable: bool, deadline: Optional[float], time_limit: Optional[float]):
        self.g = g
        self.k = k
        self.equitable = equitable
        self.deadline = deadline
        self.time_limit = time_limit
        self.order = vertex_order(g)
        n = g.n
        if equitable:
            self.size_small, self.k_large = divmod(n, k)
            self.size_large = self.size_small + 1 if self.k_large else self.size_small
        else:
            self.size_small, self.k_large, self.size_large = 0, k, n
        self.members = [0] * k
        self.blocked = [0] * k
        self.sizes = [0] * k
        self.large_count = 0
        self.assignment = [-1] * n
        self.unassigned = (1 << n) - 1
        self.nodes = 0

    def _cap(self, c: int) -> int:
        if not self.equitable or self.size_large == self.size_small:
            return self.size_large
        if self.sizes[c] == self.size_large or self.large_count < self.k_large:
            return self.size_large
        return self.size_small

    def _open(self, c: int, v: int) -> bool:
        return self.sizes[c] < self._cap(c) and not (self.blocked[c] >> v & 1)

    def _check_clock(self) -> None:
        self.nodes += 1
        if self.deadline is not None and self.nodes % _CLOCK_STRIDE == 0 and time.monotonic() > self.deadline:
            raise SolverTimeout(self.time_limit, f"k={self.k}")

    def _consistent(self) -> bool:
        rest = self.unassigned
        v = 0
        while rest:
            if rest & 1 and not any(self._open(c, v) for c in range(self.k)):
                return False
            rest >>= 1
            v += 1
        if self.equitable and self.size_small:
            for c in range(self.k):
                deficit = self.size_small - self.sizes[c]
                if deficit > 0:
                    free = self.unassigned & ~self.blocked[c]
                    if bin(free).count('1') < deficit:
                        return False
        return True

    def _place(self, v: int, c: int) -> int:
        saved = self.blocked[c]
        self.members[c] |= 1 << v
        self.blocked[c] |= self.g.adjacency[v]
        self.sizes[c] += 1
        if self.equitable and self.size_large != self.size_small and self.sizes[c] == self.size_large:
            self.large_count += 1
        self.assignment[v] = c
        self.unassigned &= ~(1 << v)
        return saved

    def _undo(self, v: int, c: int, saved: int) -> None:
        if self.equitable and self.size_large != self.size_small and self.sizes[c] == self.size_large:
            self.large_count -= 1
        self.sizes[c] -= 1
        self.members[c] &= ~(1 << v)
        self.blocked[c] = saved
        self.assignment[v] = -1
        self.unassigned |= 1 << v

    def _dfs(self, depth: int) -> bool:
        if depth == len(self.order):
            return True
        self._check_clock()
        v = self.order[depth]
        tried_empty = False
        for c in range(self.k):
            if self.sizes[c] == 0:
                if tried_empty:
                    continue
                tried_empty = True
            if not self._open(c, v):
                continue
            saved = self._place(v, c)
            if self._consistent() and self._dfs(depth + 1):
                return True
            self._undo(v, c, saved)
        return False

    def run(self) -> Optional[ColoringWitness]:
        if self._dfs(0):
            return ColoringWitness.from_assignment(self.assignment, self.k)
        return None


def _deadline(time_limit: Optional[float]) -> Optional[float]:
    return None if time_limit is None else time.monotonic() + time_limit


def _feasible(g: Graph, k: int, equitable: bool, deadline: Optional[float],
              time_limit: Optional[float]) -> Optional[ColoringWitness]:
    if k < 1 or k > max(g.n, 1):
        raise InvalidRangeError(f"要求 1 ≤ k ≤ n：n={g.n} k={k}")
    if g.n == 0:
        return ColoringWitness((), k, (0,) * k)
    if deadline is not None and time.monotonic() > deadline:
        raise SolverTimeout(time_limit, f"k={k}")
    return _ColouringSearch(g, k, equitable, deadline, time_limit).run()


def equitable_k_feasible(g: Graph, k: int, time_limit: Optional[float] = None) -> Optional[ColoringWitness]:
    """存在等分 k-染色时返回证据，否则返回 None；超时抛出 SolverTimeout。"""
    return _feasible(g, k, True, _deadline(time_limit), time_limit)


def clique_lower_bound(g: Graph) -> int:
    if g.n == 0:
        return 0
    clique, _ = nx.max_weight_clique(g.to_networkx(), weight=None)
    return len(clique)


def greedy_upper_bound(g: Graph) -> int:
    if g.n == 0:
        return 0
    colouring = nx.greedy_color(g.to_networkx(), strategy='largest_first')
    return max(colouring.values()) + 1


def equitable_chromatic_number(g: Graph, time_limit: Optional[float] = None) -> Tuple[int, ColoringWitness]:
    """χ_=：从团下界开始逐个检查 k。"""
    if g.n < 1:
        raise InvalidRangeError("equitable_chromatic_number 要求 n ≥ 1")
    deadline = _deadline(time_limit)
    for k in range(max(1, clique_lower_bound(g)), g.n + 1):
        witness = _feasible(g, k, True, deadline, time_limit)
        if witness is not None:
            return k, witness
    raise ArithmeticError("k = n 时单点色类必然可行")


def chromatic_number(g: Graph, time_limit: Optional[float] = None) -> int:
    if g.n == 0:
        return 0
    deadline = _deadline(time_limit)
    lower = max(1, clique_lower_bound(g))
    upper = greedy_upper_bound(g)
    for k in range(lower, upper):
        if _feasible(g, k, False, deadline, time_limit) is not None:
            return k
    return upper


def equitable_threshold(g: Graph, time_limit: Optional[float] = None) -> int:
    """χ*_=：从 min(n, Δ+1) 向下扫描，直到第一个不可行的 l。"""
    if g.n < 1:
        raise InvalidRangeError("equitable_threshold 要求 n ≥ 1")
    deadline = _deadline(time_limit)
    top = min(g.n, g.max_degree() + 1)
    threshold = top
    for k in range(top, 0, -1):
        if _feasible(g, k, True, deadline, time_limit) is None:
            break
        threshold = k
    return threshold


def _greedy_attempt(g: Graph, k: int, order: Sequence[int], tiebreak: Sequence[float]) -> Optional[List[int]]:
    size_small, k_large = divmod(g.n, k)
    size_large = size_small + 1 if k_large else size_small
    sizes = [0] * k
    blocked = [0] * k
    large_count = 0
    assignment = [-1] * g.n
    for v in order:
        best = None
        for c in range(k):
            if blocked[c] >> v & 1:
                continue
            cap = size_large if (size_large == size_small or sizes[c] == size_large
                                 or large_count < k_large) else size_small
            if sizes[c] >= cap:
                continue
            key = (sizes[c], tiebreak[c])
            if best is None or key < best[0]:
                best = (key, c)
        if best is None:
            return None
        c = best[1]
        assignment[v] = c
        sizes[c] += 1
        blocked[c] |= g.adjacency[v]
        if size_large != size_small and sizes[c] == size_large:
            large_count += 1
    return assignment


def greedy_equitable_bound(g: Graph, seed: SeedSpec, restarts: int = GREEDY_RESTARTS) -> Tuple[int, ColoringWitness]:
    """随机贪心：k 从 1 递增，每个 k 尝试 restarts 次随机顶点顺序，返回第一个成功的 k。"""
    if g.n < 1:
        raise InvalidRangeError("greedy_equitable_bound 要求 n ≥ 1")
    rng = seed.generator()
    for k in range(1, g.n + 1):
        for _ in range(restarts):
            order = [int(v) for v in rng.permutation(g.n)]
            assignment = _greedy_attempt(g, k, order, rng.random(k).tolist())
            if assignment is not None:
                return k, ColoringWitness.from_assignment(assignment, k)
    raise ArithmeticError("k = n 时贪心必然成功")


@lru_cache(maxsize=64)
def _unordered_masks(n: int, k: int) -> Tuple[int, ...]:
    return tuple(forbidden_mask(ep) for ep in enumerate_equipartitions(n, k, unordered=True))


def exhaustive_equitable_chromatic_number(g: Graph) -> int:
    """枚举全部无序等分得到的 χ_=（n ≤ 9），用作求解器的预言。"""
    if g.n > EXHAUSTIVE_MAX_N:
        raise SizeGuardError(f"穷举 χ_= 要求 n ≤ {EXHAUSTIVE_MAX_N}：{g.n}")
    if g.n < 1:
        raise InvalidRangeError("exhaustive_equitable_chromatic_number 要求 n ≥ 1")
    for k in range(1, g.n + 1):
        if any(g.mask & mask == 0 for mask in _unordered_masks(g.n, k)):
            return k
    raise ArithmeticError("k = n 时单点等分必然合法")


def exhaustive_equitable_feasible(g: Graph, k: int) -> bool:
    if g.n > EXHAUSTIVE_MAX_N:
        raise SizeGuardError(f"穷举可行性要求 n ≤ {EXHAUSTIVE_MAX_N}：{g.n}")
    return any(g.mask & mask == 0 for mask in _unordered_masks(g.n, k))


def witness_frame(witness: ColoringWitness) -> pd.DataFrame:
    return pd.DataFrame({'vertex': range(len(witness.assignment)), 'colour': list(witness.assignment)})


def write_witness_csv(witness: ColoringWitness, target: Union[str, TextIO, None],
                      metadata: Optional[Dict[str, object]] = None) -> None:
    meta = {'command': 'solve', 'k': witness.k}
    meta.update(metadata or {})
    csv_store.write_csv(witness_frame(witness), target, meta)


def read_witness_csv(source: Union[str, TextIO]) -> ColoringWitness:
    meta, data = csv_store.read_csv(source)
    data = data.sort_values(by='vertex')
    if list(data['vertex']) != list(range(len(data.index))):
        raise VertexSetMismatchError("证据文件的顶点必须是 0..n−1 且各出现一次")
    k = int(meta.get('k', data['colour'].max() + 1 if len(data.index) else 0))
    assignment = [int(c) for c in data['colour']]
    logging.info(f"读入证据：n={len(assignment)} k={k}")
    return ColoringWitness.from_assignment(assignment, k)
