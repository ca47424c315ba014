# -*- coding: utf-8 -*-
"""graphs 模块测试：图的构造、可复现采样、合法性检查与图文件读写。"""

import io
import itertools
import math
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from scipy import stats

from eqchrom.core.errors import InvalidRangeError, VertexSetMismatchError
from eqchrom.core.graphs import (Graph, SeedSpec, complete_bipartite_graph, complete_graph,
                                 count_equitable_partitions, cycle_graph, empty_graph, floyd_sample,
                                 is_valid_equitable, parse_dimacs, read_dimacs, sample_gnm, sample_gnp,
                                 star_graph, to_dimacs, write_dimacs)
from eqchrom.core.moments import EXACT, MomentParams, mu
from eqchrom.core.partitions import Equipartition, count_partitions


class TestGraph:

    def test_basic(self):
        g = Graph(4, [(1, 0), (2, 3)])
        assert g.m == 2
        assert g.has_edge(0, 1) and g.has_edge(1, 0)
        assert not g.has_edge(0, 2)
        assert g.degrees() == [1, 1, 1, 1]
        assert g.sorted_edges() == [(0, 1), (2, 3)]

    @pytest.mark.parametrize('edges', [[(0, 0)], [(0, 4)], [(0, 1), (1, 0)], [(-1, 2)]])
    def test_rejects_bad_edges(self, edges):
        with pytest.raises(InvalidRangeError):
            Graph(4, edges)

    def test_immutable(self):
        g = empty_graph(3)
        with pytest.raises(AttributeError):
            g.n = 5

    def test_constructors(self):
        assert complete_graph(5).m == 10
        assert cycle_graph(5).max_degree() == 2
        assert star_graph(4).degree(0) == 4
        assert complete_bipartite_graph(3, 3).m == 9
        with pytest.raises(InvalidRangeError):
            cycle_graph(2)

    def test_networkx_round_trip(self):
        g = sample_gnm(12, 30, SeedSpec(3))
        assert Graph.from_networkx(g.to_networkx()) == g
        G = nx.Graph()
        G.add_edge(1, 2)
        with pytest.raises(VertexSetMismatchError):
            Graph.from_networkx(G)


class TestSampling:

    def test_deterministic(self):
        assert sample_gnm(20, 95, SeedSpec(7, 3)) == sample_gnm(20, 95, SeedSpec(7, 3))
        assert sample_gnp(20, Fraction(1, 2), SeedSpec(7, 3)) == sample_gnp(20, '1/2', SeedSpec(7, 3))

    def test_streams_differ(self):
        graphs = {sample_gnm(20, 95, SeedSpec(7, i)) for i in range(5)}
        assert len(graphs) == 5

    def test_exact_edge_count(self):
        for m in (0, 1, 45, 189, 190):
            assert sample_gnm(20, m, SeedSpec(1)).m == m
        with pytest.raises(InvalidRangeError):
            sample_gnm(20, 191, SeedSpec(1))

    def test_gnp_extremes(self):
        assert sample_gnp(10, 0, SeedSpec(1)).m == 0
        assert sample_gnp(10, 1, SeedSpec(1)).m == 45
        with pytest.raises(InvalidRangeError):
            sample_gnp(10, '3/2', SeedSpec(1))

    def test_floyd_distinct(self):
        rng = SeedSpec(11).generator()
        sample = floyd_sample(1000, 400, rng)
        assert len(sample) == 400
        assert sample == sorted(set(sample))
        assert 0 <= sample[0] and sample[-1] < 1000

    def test_gnm_uniform(self):
        pairs = list(itertools.combinations(range(4), 2))
        index = {frozenset(c): i for i, c in enumerate(itertools.combinations(pairs, 3))}
        observed = np.zeros(len(index), dtype=np.int64)
        for i in range(20000):
            observed[index[sample_gnm(4, 3, SeedSpec(2024, i)).edges]] += 1
        assert len(index) == 20
        assert stats.chisquare(observed).pvalue > 1e-4

    def test_mean_of_valid_partitions(self):
        n, k, p = 6, 2, Fraction(1, 2)
        expected = float(mu(MomentParams.build(n, k, p), EXACT).exact_mu)
        counts = np.array([count_equitable_partitions(sample_gnm(n, 7, SeedSpec(99, i)), k)
                           for i in range(20000)], dtype=np.float64)
        sigma = counts.std(ddof=1) / math.sqrt(len(counts))
        assert abs(counts.mean() - expected) <= 4.0 * sigma


class TestEquitable:

    def test_valid_partition(self):
        g = cycle_graph(4)
        assert is_valid_equitable(g, Equipartition.from_parts([(0, 2), (1, 3)]))
        assert not is_valid_equitable(g, Equipartition.from_parts([(0, 1), (2, 3)]))

    def test_vertex_mismatch(self):
        with pytest.raises(VertexSetMismatchError):
            is_valid_equitable(cycle_graph(5), Equipartition.from_parts([(0, 2), (1, 3)]))

    def test_counts_on_extremes(self):
        for n in range(2, 7):
            for k in range(1, n + 1):
                P = count_partitions(n, k, exact=True).exact
                assert count_equitable_partitions(empty_graph(n), k) == P
                expected_complete = math.factorial(n) if k == n else 0
                assert count_equitable_partitions(complete_graph(n), k) == expected_complete


class TestDimacs:

    def test_round_trip(self, tmp_path):
        g = sample_gnm(15, 40, SeedSpec(5))
        path = str(tmp_path / 'g' / 'graph.dimacs')
        write_dimacs(g, path, comments=['seed 5'])
        assert read_dimacs(path) == g
        buffer = io.StringIO()
        write_dimacs(g, buffer)
        buffer.seek(0)
        assert read_dimacs(buffer) == g

    def test_format(self):
        text = to_dimacs(Graph(3, [(0, 2)]), comments=['hello'])
        assert text == "c hello\np edge 3 1\ne 1 3\n"

    def test_isolated_vertices_kept(self):
        assert parse_dimacs("p edge 5 1\ne 1 2\n").n == 5

    @pytest.mark.parametrize('text', [
        "e 1 2\n",
        "p edge 3 2\ne 1 2\n",
        "p edge 3 1\ne 1 4\n",
        "p col 3 0\n",
        "p edge 3 1\nx 1 2\n",
        "c only a comment\n",
    ])
    def test_malformed(self, text):
        with pytest.raises(InvalidRangeError):
            parse_dimacs(text)
