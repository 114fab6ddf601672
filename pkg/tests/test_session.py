import numpy as np
import pytest

from specsparse.errors import SpecsparseError
from specsparse.graph import WeightedGraph, load_edge_list
from specsparse.session import QuerySession

from conftest import path_graph


def weighted_star():
    return WeightedGraph.from_edges(3, [(0, 1, 3.0), (0, 2, 1.0)])


class TestGetNeighbor:
    def test_path_returns_degree_and_edge(self):
        s = QuerySession(path_graph(3))
        assert s.get_neighbor(1, 1) == (2.0, (0, 1.0))  # tie broken by id

    def test_empty_marker_past_degree(self):
        s = QuerySession(path_graph(3))
        assert s.get_neighbor(1, 3) == (2.0, None)

    def test_star_heaviest_first(self):
        s = QuerySession(WeightedGraph.from_edges(3, [(0, 1, 5.0), (0, 2, 3.0)]))
        deg, edge = s.get_neighbor(0, 1)
        assert deg == 8.0
        assert edge[1] == 5.0

    def test_weight_monotone_in_rank(self, rng):
        edges = [(0, i, float(rng.uniform(0.1, 5.0))) for i in range(1, 30)]
        s = QuerySession(WeightedGraph.from_edges(30, edges))
        prev = float("inf")
        for i in range(1, 30):
            _, e = s.get_neighbor(0, i)
            assert e[1] <= prev
            prev = e[1]

    def test_invalid_vertex(self):
        s = QuerySession(path_graph(3))
        with pytest.raises(SpecsparseError):
            s.get_neighbor(7, 1)


class TestGetEdge:
    def test_path_membership(self):
        s = QuerySession(path_graph(3))
        assert s.get_edge(0, 1) is True
        assert s.get_edge(0, 2) is False

    def test_symmetric(self, rng):
        edges = [(i, j, 1.0) for i in range(8) for j in range(i + 1, 8) if rng.random() < 0.4]
        g = WeightedGraph.from_edges(8, edges)
        s = QuerySession(g)
        for u in range(8):
            for v in range(u + 1, 8):
                assert s.get_edge(u, v) == s.get_edge(v, u)

    def test_rejects_self_query(self):
        s = QuerySession(path_graph(3))
        with pytest.raises(SpecsparseError):
            s.get_edge(1, 1)


class TestRandomNeighbor:
    def test_single_edge_graph_both_orientations(self):
        s = QuerySession(path_graph(2), rng_seed=5)
        seen = set()
        for _ in range(64):
            a, res = s.random_neighbor()
            b, deg_a, deg_b = res
            assert {a, b} == {0, 1}
            assert deg_a == deg_b == 1.0
            seen.add(a)
        assert seen == {0, 1}

    def test_isolated_vertex_returns_empty(self):
        g = load_edge_list("#n 3\n0 1")
        s = QuerySession(g, rng_seed=0)
        hits = 0
        for _ in range(100):
            a, res = s.random_neighbor()
            if a == 2:
                assert res is None
                hits += 1
        assert hits > 0

    def test_weighted_star_conditional_frequency(self):
        # Monte Carlo oracle: P(b = heavy | a = center) = 3/4 within 0.02.
        s = QuerySession(weighted_star(), rng_seed=11)
        a, b, _, _ = s.random_neighbor_many(100_000)
        center = a == 0
        heavy = (b == 1) & center
        freq = heavy.sum() / center.sum()
        assert abs(freq - 0.75) <= 0.02

    def test_vertex_marginal_uniform(self):
        # 1e5 draws on n = 50: total-variation distance to uniform <= 0.02.
        g = WeightedGraph.from_edges(50, [(i, (i + 1) % 50, 1.0) for i in range(50)])
        s = QuerySession(g, rng_seed=3)
        a, _, _, _ = s.random_neighbor_many(100_000)
        counts = np.bincount(a, minlength=50)
        tv = 0.5 * np.abs(counts / 100_000 - 1 / 50).sum()
        assert tv <= 0.02

    def test_same_seed_same_sequence(self):
        s1 = QuerySession(weighted_star(), rng_seed=123)
        s2 = QuerySession(weighted_star(), rng_seed=123)
        for _ in range(50):
            assert s1.random_neighbor() == s2.random_neighbor()

    def test_batched_equals_sequential(self):
        s1 = QuerySession(weighted_star(), rng_seed=9)
        batch = s1.random_neighbor_many(40)
        s2 = QuerySession(weighted_star(), rng_seed=9)
        for t in range(40):
            a, res = s2.random_neighbor()
            assert batch[0][t] == a
            if res is None:
                assert batch[1][t] == -1
            else:
                assert batch[1][t] == res[0]
                assert batch[2][t] == res[1]
                assert batch[3][t] == res[2]


class TestCounters:
    def test_each_call_counts_once(self):
        s = QuerySession(path_graph(4), rng_seed=0)
        for i in range(5):
            s.get_neighbor(1, i + 1)
        s.get_edge(0, 1)
        s.get_edge(0, 2)
        s.random_neighbor()
        s.random_neighbor_many(7)
        assert s.neighbor_queries == 5
        assert s.edge_queries == 2
        assert s.random_queries == 8

    def test_counters_start_at_zero(self):
        s = QuerySession(path_graph(2))
        assert (s.neighbor_queries, s.edge_queries, s.random_queries) == (0, 0, 0)

    def test_failed_lookup_still_counts(self):
        s = QuerySession(path_graph(2))
        s.get_neighbor(0, 99)
        assert s.neighbor_queries == 1
