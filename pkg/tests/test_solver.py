# -*- coding: utf-8 -*-
"""solver 模块测试：与穷举预言对照、已知图的取值、超时与证据文件。"""

import io
from fractions import Fraction

import pytest

from eqchrom.core.errors import InvalidRangeError, SizeGuardError, SolverTimeout, VertexSetMismatchError
from eqchrom.core.graphs import (Graph, SeedSpec, complete_bipartite_graph, complete_graph, cycle_graph,
                                 empty_graph, sample_gnp, star_graph)
from eqchrom.core.solver import (ColoringWitness, chromatic_number, clique_lower_bound,
                                 equitable_chromatic_number, equitable_k_feasible, equitable_threshold,
                                 exhaustive_equitable_chromatic_number, exhaustive_equitable_feasible,
                                 greedy_equitable_bound, greedy_upper_bound, read_witness_csv, vertex_order,
                                 write_witness_csv)

DENSITIES = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))


def _random_graphs(count, n_max, seed=17):
    for index in range(count):
        n = 2 + index % (n_max - 1)
        yield sample_gnp(n, DENSITIES[index % 3], SeedSpec(seed, index))


class TestPinned:

    def test_star(self):
        k, witness = equitable_chromatic_number(star_graph(4))
        assert k == 3
        assert witness.is_valid(star_graph(4))
        assert chromatic_number(star_graph(4)) == 2

    def test_k33_non_monotone(self):
        g = complete_bipartite_graph(3, 3)
        assert equitable_chromatic_number(g)[0] == 2
        assert equitable_k_feasible(g, 3) is None
        assert equitable_k_feasible(g, 4) is not None
        assert equitable_threshold(g) == 4 == g.max_degree() + 1

    def test_cycles_and_cliques(self):
        assert chromatic_number(cycle_graph(5)) == 3
        assert chromatic_number(cycle_graph(6)) == 2
        assert chromatic_number(complete_graph(4)) == 4
        assert equitable_chromatic_number(complete_graph(5))[0] == 5
        assert equitable_chromatic_number(empty_graph(6))[0] == 1
        assert chromatic_number(empty_graph(0)) == 0

    def test_bounds(self):
        g = cycle_graph(5)
        assert clique_lower_bound(g) == 2
        assert greedy_upper_bound(g) >= 3

    def test_invalid_k(self):
        with pytest.raises(InvalidRangeError):
            equitable_k_feasible(cycle_graph(5), 6)
        with pytest.raises(InvalidRangeError):
            equitable_k_feasible(cycle_graph(5), 0)

    def test_vertex_order(self):
        assert vertex_order(star_graph(3)) == [0, 1, 2, 3]


class TestAgainstExhaustive:

    def test_chi_eq_matches(self):
        for g in _random_graphs(150, 8):
            k, witness = equitable_chromatic_number(g)
            assert k == exhaustive_equitable_chromatic_number(g)
            assert witness.is_valid(g)
            assert witness.k == k

    def test_feasibility_matches(self):
        for g in _random_graphs(60, 7, seed=23):
            for k in range(1, g.n + 1):
                witness = equitable_k_feasible(g, k)
                assert (witness is not None) == exhaustive_equitable_feasible(g, k)
                if witness is not None:
                    assert witness.is_valid(g)

    def test_chain(self):
        for g in _random_graphs(80, 8, seed=31):
            chi = chromatic_number(g)
            chi_eq = equitable_chromatic_number(g)[0]
            star = equitable_threshold(g)
            assert 1 <= chi <= chi_eq <= star <= min(g.n, g.max_degree() + 1)
            greedy_k, witness = greedy_equitable_bound(g, SeedSpec(5))
            assert chi_eq <= greedy_k
            assert witness.is_valid(g)

    def test_exhaustive_guard(self):
        with pytest.raises(SizeGuardError):
            exhaustive_equitable_chromatic_number(empty_graph(10))


class TestTimeout:

    def test_timeout_is_not_infeasible(self):
        g = sample_gnp(60, Fraction(1, 2), SeedSpec(1))
        with pytest.raises(SolverTimeout):
            equitable_chromatic_number(g, time_limit=1e-9)


class TestWitness:

    def test_from_assignment(self):
        witness = ColoringWitness.from_assignment([0, 1, 0, 1, 2], 3)
        assert witness.class_sizes == (2, 2, 1)
        assert witness.is_balanced()
        assert not ColoringWitness.from_assignment([0, 0, 0, 1], 2).is_balanced()

    def test_length_mismatch(self):
        with pytest.raises(VertexSetMismatchError):
            ColoringWitness.from_assignment([0, 1], 2).is_proper(cycle_graph(5))

    def test_improper(self):
        g = Graph(3, [(0, 1)])
        assert not ColoringWitness.from_assignment([0, 0, 1], 2).is_valid(g)

    def test_csv_round_trip(self):
        g = sample_gnp(9, Fraction(1, 2), SeedSpec(4))
        k, witness = equitable_chromatic_number(g)
        buffer = io.StringIO()
        write_witness_csv(witness, buffer, {'input': 'graph.dimacs'})
        buffer.seek(0)
        back = read_witness_csv(buffer)
        assert back == witness
        assert back.k == k
        assert back.is_valid(g)
