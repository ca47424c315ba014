#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
随机图模块

本模块提供简单无向图的表示、G(n,m) / G(n,p) 的可复现采样、
等分染色合法性检查以及 DIMACS 风格的图文件读写。

核心概念
--------
- **Graph**: 顶点为 0..n−1，边集为无序对集合；同时保存邻接位集（每个顶点
  一个 Python int）和边下标位掩码，后者与 ``partitions.forbidden_mask``
  直接做按位与即可判断一个等分是否合法
- **SeedSpec**: (master_seed, stream_index) 确定一个随机流，派生方式为
  ``numpy.random.SeedSequence(master_seed, spawn_key=(stream_index,))``
  → ``PCG64``。不同 stream_index 得到互相独立的流，与线程调度无关
- **G(n,m)**: 用 Floyd 算法从 N = C(n,2) 个边下标中均匀抽取 m 个，
  边下标按 ``itertools.combinations(range(n), 2)`` 的顺序映射到顶点对
- **G(n,p)**: 每条边独立以概率 p 出现

文件格式
--------
::

    c 注释行（可选）
    p edge <n> <m>
    e <u> <v>        （顶点从 1 开始编号，每条边一行）

使用方式
--------
::

    from eqchrom.core.graphs import SeedSpec, sample_gnm, write_dimacs
    g = sample_gnm(24, 138, SeedSpec(7, 0))
    write_dimacs(g, 'output/g_0000.dimacs')
"""

import itertools
import logging
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, TextIO, Tuple, Union

import networkx as nx
import numpy as np

from eqchrom.core.errors import InvalidRangeError, VertexSetMismatchError
from eqchrom.core.partitions import Equipartition, edge_index, enumerate_equipartitions, forbidden_mask

__author__ = 'myh '
__date__ = '2026/9/7 '

Edge = Tuple[int, int]


class Graph(object):
    """不可变的简单无向图。"""

    __slots__ = ('n', 'edges', 'adjacency', 'mask')

    def __init__(self, n: int, edges: Iterable[Edge]):
        if n < 0:
            raise InvalidRangeError(f"顶点数必须非负：{n}")
        normalized = set()
        for u, v in edges:
            if u == v:
                raise InvalidRangeError(f"不允许自环：{u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidRangeError(f"边 ({u},{v}) 超出顶点范围 0..{n - 1}")
            pair = (u, v) if u < v else (v, u)
            if pair in normalized:
                raise InvalidRangeError(f"重边：{pair}")
            normalized.add(pair)
        adjacency = [0] * n
        mask = 0
        for u, v in normalized:
            adjacency[u] |= 1 << v
            adjacency[v] |= 1 << u
            mask |= 1 << edge_index(u, v, n)
        object.__setattr__(self, 'n', n)
        object.__setattr__(self, 'edges', frozenset(normalized))
        object.__setattr__(self, 'adjacency', tuple(adjacency))
        object.__setattr__(self, 'mask', mask)

    def __setattr__(self, key, value):
        raise AttributeError("Graph 构造后不可修改")

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def degree(self, v: int) -> int:
        return bin(self.adjacency[v]).count('1')

    def degrees(self) -> List[int]:
        return [self.degree(v) for v in range(self.n)]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(range(self.n))
        G.add_edges_from(self.sorted_edges())
        return G

    @classmethod
    def from_networkx(cls, G: nx.Graph) -> 'Graph':
        nodes = sorted(G.nodes())
        if nodes != list(range(len(nodes))):
            raise VertexSetMismatchError("networkx 图的顶点必须是 0..n−1")
        return cls(len(nodes), G.edges())


def complete_graph(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def empty_graph(n: int) -> Graph:
    return Graph(n, ())


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidRangeError(f"环至少需要 3 个顶点：{n}")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves}，中心为 0。"""
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def complete_bipartite_graph(a: int, b: int) -> Graph:
    """K_{a,b}，左侧 0..a−1，右侧 a..a+b−1。"""
    return Graph(a + b, ((u, a + v) for u in range(a) for v in range(b)))


@dataclass(frozen=True)
class SeedSpec:
    master_seed: int
    stream_index: int = 0

    def generator(self) -> np.random.Generator:
        sequence = np.random.SeedSequence(self.master_seed & 0xFFFFFFFFFFFFFFFF, spawn_key=(self.stream_index,))
        return np.random.Generator(np.random.PCG64(sequence))


@lru_cache(maxsize=64)
def _pair_table(n: int) -> Tuple[Edge, ...]:
    return tuple(itertools.combinations(range(n), 2))


def floyd_sample(N: int, m: int, rng: np.random.Generator) -> List[int]:
    """Floyd 算法：从 0..N−1 中均匀抽取 m 个不同的下标，返回升序列表。"""
    chosen = set()
    for i in range(N - m, N):
        t = int(rng.integers(0, i + 1))
        chosen.add(i if t in chosen else t)
    return sorted(chosen)


def sample_gnm(n: int, m: int, seed: SeedSpec) -> Graph:
    N = n * (n - 1) // 2
    if m < 0 or m > N:
        raise InvalidRangeError(f"G(n,m) 要求 0 ≤ m ≤ C(n,2)={N}：{m}")
    pairs = _pair_table(n)
    return Graph(n, (pairs[i] for i in floyd_sample(N, m, seed.generator())))


def sample_gnp(n: int, p: Union[Fraction, str], seed: SeedSpec) -> Graph:
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise InvalidRangeError(f"G(n,p) 要求 0 ≤ p ≤ 1：{p}")
    pairs = _pair_table(n)
    present = seed.generator().random(len(pairs)) < float(p)
    return Graph(n, (pairs[i] for i in np.flatnonzero(present)))


def is_valid_equitable(g: Graph, partition: Equipartition) -> bool:
    """每个份都是独立集时为 True（份大小由等分本身保证均衡）。"""
    if partition.n != g.n:
        raise VertexSetMismatchError(f"等分顶点数 {partition.n} 与图顶点数 {g.n} 不一致")
    return g.mask & forbidden_mask(partition) == 0


@lru_cache(maxsize=64)
def _partition_masks(n: int, k: int) -> Tuple[int, ...]:
    return tuple(forbidden_mask(ep) for ep in enumerate_equipartitions(n, k))


def count_equitable_partitions(g: Graph, k: int) -> int:
    """X_{n,k}：图 g 上合法有序 k-等分的个数（n ≤ 16）。"""
    return sum(1 for mask in _partition_masks(g.n, k) if g.mask & mask == 0)


def to_dimacs(g: Graph, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p edge {g.n} {g.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> Graph:
    n: Optional[int] = None
    declared = 0
    edges: List[Edge] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('c'):
            continue
        fields = line.split()
        if fields[0] == 'p':
            if len(fields) != 4 or fields[1] != 'edge' or n is not None:
                raise InvalidRangeError(f"第 {number} 行：非法的头部 {raw!r}")
            n, declared = int(fields[2]), int(fields[3])
        elif fields[0] == 'e':
            if n is None or len(fields) != 3:
                raise InvalidRangeError(f"第 {number} 行：边出现在头部之前或格式错误 {raw!r}")
            edges.append((int(fields[1]) - 1, int(fields[2]) - 1))
        else:
            raise InvalidRangeError(f"第 {number} 行：无法识别 {raw!r}")
    if n is None:
        raise InvalidRangeError("缺少 p edge 头部")
    if len(edges) != declared:
        raise InvalidRangeError(f"头部声明 {declared} 条边，实际 {len(edges)} 条")
    return Graph(n, edges)


def write_dimacs(g: Graph, target: Union[str, TextIO], comments: Sequence[str] = ()) -> None:
    text = to_dimacs(g, comments)
    if isinstance(target, str):
        dirname = os.path.dirname(target)
        if dirname and not os.path.exists(dirname):
            os.makedirs(dirname)
        with open(target, 'w', encoding='ascii', newline='\n') as fh:
            fh.write(text)
        logging.info(f"写出图文件：{target}")
        return
    target.write(text)


def read_dimacs(source: Union[str, TextIO]) -> Graph:
    if isinstance(source, str):
        with open(source, 'r', encoding='ascii') as fh:
            return parse_dimacs(fh.read())
    return parse_dimacs(source.read())
