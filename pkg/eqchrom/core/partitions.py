#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
等分模块

本模块处理 k-等分（equipartition）的形状、计数、枚举，以及两个等分之间的
重叠序列（overlap sequence），后者是二阶矩计算的核心。

核心概念
--------
- **形状**: n 个顶点分成 k 份，k_L = n mod k 份大小为 ⌈n/k⌉，其余
  k_S 份大小为 ⌊n/k⌋，大份在前
- **禁用边 f**: 落在同一份内部的顶点对个数。一个等分是合法染色当且仅当
  这 f 条边都不在图中
- **有序等分**: 份带编号的等分，总数 P = n!/(⌈n/k⌉!^k_L · ⌊n/k⌋!^k_S)
- **无序等分**: 同样大小的份之间不区分顺序，总数 P/(k_L!·k_S!)；
  规范代表元中同样大小的份按最小顶点升序排列
- **重叠序列 r**: 对一对等分，r_i 统计交集大小恰为 i（i ≥ 2）的份对个数；
  v = Σ i·r_i，d = Σ C(i,2)·r_i（两个等分共有的禁用边数），R_3 = Σ_{i≥3} r_i

使用方式
--------
::

    from eqchrom.core.partitions import shape, count_partitions, overlap

    s = shape(7, 3)            # f=5, delta=1/3
    count_partitions(9, 3).exact   # 1680

注意事项
--------
- 枚举要求 n ≤ 16，重叠普查要求 n ≤ 10，穷举普查要求 n ≤ 8，
  超出时抛出 SizeGuardError 而不是静默截断
- 普查默认利用对称群在有序等分上的传递性：固定第一个等分，
  结果再乘以 P；``exhaustive=True`` 时用 numpy 按成员矩阵遍历全部有序对，用于复核
- 两个等分共有的禁用边构成若干互不相交的团，团的大小就是交集大小，
  因此 ``overlap_from_shared_mask`` 只凭禁用边掩码即可还原重叠序列
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from eqchrom.core.errors import InvalidRangeError, ShapeMismatchError, SizeGuardError
from eqchrom.core.numerics import LogValue, log_factorial
from eqchrom.lib.run_template import run_ordered

__author__ = 'myh '
__date__ = '2026/9/4 '

ENUMERATION_MAX_N = 16
CENSUS_MAX_N = 10
EXHAUSTIVE_CENSUS_MAX_N = 8
EXACT_COUNT_MAX_N = 64


@dataclass(frozen=True)
class EquipartitionShape:
    n: int
    k: int
    delta: Fraction
    k_large: int
    k_small: int
    size_large: int
    size_small: int
    f: int

    @property
    def j(self) -> Optional[int]:
        """k 整除 n 时的份大小，否则为 None。"""
        return self.size_small if self.k_large == 0 else None

    def sizes(self) -> Tuple[int, ...]:
        return (self.size_large,) * self.k_large + (self.size_small,) * self.k_small


def shape(n: int, k: int) -> EquipartitionShape:
    if k < 1 or k > n:
        raise InvalidRangeError(f"shape 要求 1 ≤ k ≤ n：n={n} k={k}")
    size_small, k_large = divmod(n, k)
    k_small = k - k_large
    size_large = size_small + 1 if k_large else size_small
    delta = Fraction(n, k) - size_small
    f = k_large * comb(size_large, 2) + k_small * comb(size_small, 2)
    algebraic = n * (Fraction(n, k) - 1) / 2 + delta * (1 - delta) * k / 2
    if algebraic != f:
        raise ArithmeticError(f"禁用边数两种形式不一致：n={n} k={k} {f} != {algebraic}")
    return EquipartitionShape(n, k, delta, k_large, k_small, size_large, size_small, f)


@dataclass(frozen=True)
class PartitionCount:
    log: LogValue
    exact: Optional[int]


def count_partitions(n: int, k: int, exact: Optional[bool] = None) -> PartitionCount:
    """有序 k-等分的个数 P_{n,k}。

    Args:
        exact: True 时强制计算精确整数（n > 64 抛 SizeGuardError）；
               False 只算对数；None 时 n ≤ 64 才计算精确值
    """
    s = shape(n, k)
    if exact and n > EXACT_COUNT_MAX_N:
        raise SizeGuardError(f"精确 P 要求 n ≤ {EXACT_COUNT_MAX_N}：{n}")
    if exact is None:
        exact = n <= EXACT_COUNT_MAX_N
    log_p = (log_factorial(n) - s.k_large * log_factorial(s.size_large)
             - s.k_small * log_factorial(s.size_small))
    exact_p = None
    if exact:
        exact_p = factorial(n) // (factorial(s.size_large) ** s.k_large * factorial(s.size_small) ** s.k_small)
    return PartitionCount(LogValue(False, log_p), exact_p)


@dataclass(frozen=True)
class Equipartition:
    """有序 k-等分：k 个排好序的顶点元组，大份在前。"""
    n: int
    parts: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_parts(cls, parts: Sequence[Sequence[int]], n: Optional[int] = None) -> 'Equipartition':
        normalized = tuple(tuple(sorted(p)) for p in parts)
        if n is None:
            n = sum(len(p) for p in normalized)
        ep = cls(n, normalized)
        ep.validate()
        return ep

    @classmethod
    def from_labels(cls, labels: Sequence[int], k: int) -> 'Equipartition':
        buckets: List[List[int]] = [[] for _ in range(k)]
        for v, c in enumerate(labels):
            buckets[c].append(v)
        return cls.from_parts(buckets, len(labels))

    @property
    def k(self) -> int:
        return len(self.parts)

    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(p) for p in self.parts)

    def shape(self) -> EquipartitionShape:
        return shape(self.n, self.k)

    def labels(self) -> Tuple[int, ...]:
        out = [0] * self.n
        for c, part in enumerate(self.parts):
            for v in part:
                out[v] = c
        return tuple(out)

    def validate(self) -> None:
        seen = [v for p in self.parts for v in p]
        if sorted(seen) != list(range(self.n)):
            raise InvalidRangeError(f"等分的份必须互不相交且覆盖 0..{self.n - 1}")
        if self.sizes() != shape(self.n, self.k).sizes():
            raise InvalidRangeError(f"份大小 {self.sizes()} 不符合 ({self.n},{self.k}) 等分形状")

    def __str__(self) -> str:
        return "|".join(",".join(str(v) for v in p) for p in self.parts)


def _split(pool: Tuple[int, ...], size: int, count: int, unordered: bool) -> Iterator[List[Tuple[int, ...]]]:
    """把 pool 划分成 count 个大小为 size 的份。"""
    if count == 0:
        yield []
        return
    if unordered:
        head, rest = pool[0], pool[1:]
        for others in itertools.combinations(rest, size - 1):
            part = (head,) + others
            remaining = tuple(v for v in rest if v not in others)
            for tail in _split(remaining, size, count - 1, True):
                yield [part] + tail
        return
    for part in itertools.combinations(pool, size):
        chosen = set(part)
        remaining = tuple(v for v in pool if v not in chosen)
        for tail in _split(remaining, size, count - 1, False):
            yield [part] + tail


def enumerate_equipartitions(n: int, k: int, unordered: bool = False) -> Iterator[Equipartition]:
    """逐个产生 (n,k) 的有序等分；unordered=True 时只产生规范代表元。"""
    if n > ENUMERATION_MAX_N:
        raise SizeGuardError(f"枚举要求 n ≤ {ENUMERATION_MAX_N}：{n}")
    s = shape(n, k)
    vertices = tuple(range(n))
    large_total = s.k_large * s.size_large
    for large_set in itertools.combinations(vertices, large_total):
        chosen = set(large_set)
        rest = tuple(v for v in vertices if v not in chosen)
        for large_parts in _split(large_set, s.size_large, s.k_large, unordered):
            for small_parts in _split(rest, s.size_small, s.k_small, unordered):
                yield Equipartition(n, tuple(large_parts + small_parts))


def edge_index(u: int, v: int, n: int) -> int:
    """顶点对 (u,v) 在 itertools.combinations(range(n), 2) 顺序中的下标。"""
    if u > v:
        u, v = v, u
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


def forbidden_edges(partition: Equipartition) -> List[Tuple[int, int]]:
    edges = []
    for part in partition.parts:
        edges.extend(itertools.combinations(part, 2))
    return sorted(edges)


def forbidden_mask(partition: Equipartition) -> int:
    mask = 0
    for u, v in forbidden_edges(partition):
        mask |= 1 << edge_index(u, v, partition.n)
    return mask


@dataclass(frozen=True)
class OverlapSequence:
    """重叠序列，r 只保存非零项 (i, r_i)，按 i 升序。"""
    r: Tuple[Tuple[int, int], ...]
    v: int
    rho: Fraction
    d: int
    r3_sum: int

    @classmethod
    def from_counts(cls, counts: Dict[int, int], n: int) -> 'OverlapSequence':
        r = tuple(sorted((i, c) for i, c in counts.items() if i >= 2 and c > 0))
        v = sum(i * c for i, c in r)
        d = sum(comb(i, 2) * c for i, c in r)
        r3 = sum(c for i, c in r if i >= 3)
        return cls(r, v, Fraction(v, n), d, r3)

    def r_of(self, i: int) -> int:
        for size, c in self.r:
            if size == i:
                return c
        return 0

    def label(self) -> str:
        if not self.r:
            return "-"
        return ",".join(f"r{i}={c}" for i, c in self.r)


def _intersection_counts(labels1: Sequence[int], labels2: Sequence[int]) -> Dict[int, int]:
    blocks = Counter(zip(labels1, labels2))
    return Counter(size for size in blocks.values() if size >= 2)


def overlap(p1: Equipartition, p2: Equipartition) -> OverlapSequence:
    if p1.n != p2.n or p1.k != p2.k:
        raise ShapeMismatchError(f"等分形状不一致：({p1.n},{p1.k}) vs ({p2.n},{p2.k})")
    return OverlapSequence.from_counts(_intersection_counts(p1.labels(), p2.labels()), p1.n)


def _census_against(first: Equipartition, others: Sequence[Equipartition]) -> Counter:
    labels1 = first.labels()
    tally: Counter = Counter()
    for other in others:
        tally[OverlapSequence.from_counts(_intersection_counts(labels1, other.labels()), first.n)] += 1
    return tally


def membership_array(partitions: Sequence[Equipartition]) -> np.ndarray:
    """P×k×n 的 0/1 成员矩阵，[p, c, v] = 1 表示第 p 个等分的第 c 份包含 v。"""
    n, k = partitions[0].n, partitions[0].k
    members = np.zeros((len(partitions), k, n), dtype=np.int16)
    for index, ep in enumerate(partitions):
        for c, part in enumerate(ep.parts):
            members[index, c, list(part)] = 1
    return members


def _census_rows(first: int, members: np.ndarray, top: int) -> Counter:
    """第 first 个等分与全部等分的重叠序列统计（向量化）。"""
    n = members.shape[2]
    if top < 2:
        return Counter({OverlapSequence.from_counts({}, n): members.shape[0]})
    inter = np.matmul(members, members[first].T)
    hist = np.stack([(inter == s).sum(axis=(1, 2)) for s in range(2, top + 1)], axis=1)
    rows, counts = np.unique(hist, axis=0, return_counts=True)
    tally: Counter = Counter()
    for row, c in zip(rows.tolist(), counts.tolist()):
        tally[OverlapSequence.from_counts(dict(zip(range(2, top + 1), row)), n)] += c
    return tally


@lru_cache(maxsize=65536)
def overlap_from_shared_mask(shared: int, n: int) -> OverlapSequence:
    """由两个等分共有的禁用边掩码还原重叠序列：每个连通分量是一个团，其大小即交集大小。"""
    g = nx.Graph()
    rest, index = shared, 0
    pairs = _pair_list(n)
    while rest:
        if rest & 1:
            g.add_edge(*pairs[index])
        rest >>= 1
        index += 1
    sizes = Counter(len(component) for component in nx.connected_components(g))
    return OverlapSequence.from_counts(sizes, n)


@lru_cache(maxsize=32)
def _pair_list(n: int) -> Tuple[Tuple[int, int], ...]:
    return tuple(itertools.combinations(range(n), 2))


def count_pairs_with_overlap(n: int, k: int, exhaustive: bool = False,
                             workers: Optional[int] = None) -> Dict[OverlapSequence, int]:
    """有序等分对按重叠序列分类的个数 P_r，总和为 P²。"""
    if n > CENSUS_MAX_N:
        raise SizeGuardError(f"重叠普查要求 n ≤ {CENSUS_MAX_N}：{n}")
    if exhaustive and n > EXHAUSTIVE_CENSUS_MAX_N:
        raise SizeGuardError(f"穷举普查要求 n ≤ {EXHAUSTIVE_CENSUS_MAX_N}：{n}")
    everything = list(enumerate_equipartitions(n, k))

    if not exhaustive:
        tally = _census_against(everything[0], everything)
        total = len(everything)
        return {key: c * total for key, c in sorted(tally.items(), key=lambda kv: (kv[0].d, kv[0].r))}

    members = membership_array(everything)
    top = shape(n, k).size_large
    partial = run_ordered(_census_rows, range(len(everything)), workers, members, top, reraise=(Exception,))
    merged: Counter = Counter()
    for tally in partial:
        merged.update(tally)
    logging.info(f"穷举普查 n={n} k={k}：{len(everything) ** 2} 对，{len(merged)} 种重叠序列")
    return {key: c for key, c in sorted(merged.items(), key=lambda kv: (kv[0].d, kv[0].r))}
