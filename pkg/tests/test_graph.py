import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specsparse.errors import GraphFormatError, IsolatedVertexError, SpecsparseError
from specsparse.graph import WeightedGraph, dump_edge_list, load_edge_list, normalized_adjacency
from specsparse.eig import eig_sym_dense, spectral_norm_sym

from conftest import complete_graph, path_graph


class TestLoadEdgeList:
    def test_path_on_three_vertices(self):
        g = load_edge_list("0 1\n1 2")
        assert g.n == 3
        assert list(g.degrees) == [1.0, 2.0, 1.0]

    def test_adjacency_sorted_by_weight_desc(self):
        g = load_edge_list("0 1 5.0\n0 2 3.0")
        ids, ws = g.neighbors(0)
        assert list(ids) == [1, 2]
        assert list(ws) == [5.0, 3.0]

    def test_self_loop_rejected_with_line(self):
        with pytest.raises(GraphFormatError) as err:
            load_edge_list("0 1\n0 0 1.0")
        assert err.value.line == 2
        assert "self-loop" in str(err.value)

    def test_duplicate_edge_rejected(self):
        with pytest.raises(GraphFormatError, match="duplicate"):
            load_edge_list("0 1\n1 0 2.0")

    def test_nonpositive_weight_rejected(self):
        with pytest.raises(GraphFormatError, match="positive"):
            load_edge_list("0 1 0.0")
        with pytest.raises(GraphFormatError, match="positive"):
            load_edge_list("0 1 -2.5")

    def test_malformed_line(self):
        with pytest.raises(GraphFormatError) as err:
            load_edge_list("0 1\nnope nope nope nope")
        assert err.value.line == 2

    def test_header_adds_isolated_vertices(self):
        g = load_edge_list("#n 5\n0 1")
        assert g.n == 5
        assert g.degree(4) == 0.0

    def test_header_below_max_id_rejected(self):
        with pytest.raises(GraphFormatError, match="header"):
            load_edge_list("#n 2\n0 5")

    def test_comments_and_blank_lines(self):
        g = load_edge_list("# a comment\n\n0 1 2.0\n")
        assert g.num_edges == 1

    def test_accepts_bytes_and_streams(self):
        assert load_edge_list(b"0 1").num_edges == 1
        assert load_edge_list(io.StringIO("0 1")).num_edges == 1

    def test_weight_default_is_one(self):
        g = load_edge_list("0 1")
        _, ws = g.neighbors(0)
        assert list(ws) == [1.0]


class TestSerialization:
    def test_round_trip_is_canonical(self):
        g = load_edge_list("2 0 0.25\n0 1 5.0")
        text = dump_edge_list(g)
        assert text.splitlines()[0] == "#n 3"
        assert dump_edge_list(load_edge_list(text)) == text

    def test_seventeen_digit_weights_survive(self):
        w = 1.0 / 3.0
        g = WeightedGraph.from_edges(2, [(0, 1, w)])
        g2 = load_edge_list(dump_edge_list(g))
        _, ws = g2.neighbors(0)
        assert ws[0] == w

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.floats(min_value=0.01, max_value=100.0), min_size=1, max_size=12))
    def test_round_trip_random_stars(self, weights):
        n = len(weights) + 1
        g = WeightedGraph.from_edges(n, [(0, i + 1, float(w)) for i, w in enumerate(weights)])
        assert dump_edge_list(load_edge_list(dump_edge_list(g))) == dump_edge_list(g)


class TestWeightedGraph:
    def test_degrees_match_adjacency_sums(self, rng):
        edges = []
        for i in range(30):
            for j in range(i + 1, 30):
                if rng.random() < 0.3:
                    edges.append((i, j, float(rng.uniform(0.1, 4.0))))
        g = WeightedGraph.from_edges(30, edges)
        for v in range(30):
            _, ws = g.neighbors(v)
            assert g.degree(v) == pytest.approx(float(ws.sum()), rel=1e-12)

    def test_adjacency_non_increasing(self, rng):
        edges = [(0, i, float(rng.uniform(0.1, 9.0))) for i in range(1, 40)]
        g = WeightedGraph.from_edges(40, edges)
        _, ws = g.neighbors(0)
        assert np.all(np.diff(ws) <= 0)

    def test_tie_break_ascending_id(self):
        g = WeightedGraph.from_edges(4, [(1, 3, 1.0), (1, 0, 1.0), (1, 2, 1.0)])
        ids, _ = g.neighbors(1)
        assert list(ids) == [0, 2, 3]

    def test_neighbor_entry_bounds(self):
        g = path_graph(3)
        assert g.neighbor_entry(0, 1) == (1, 1.0)
        assert g.neighbor_entry(0, 2) is None
        with pytest.raises(SpecsparseError):
            g.neighbor_entry(0, 0)

    def test_vertex_range_checked(self):
        g = path_graph(3)
        with pytest.raises(SpecsparseError):
            g.degree(3)

    def test_symmetry_of_edges(self):
        g = load_edge_list("0 1 2.0\n1 2 3.0")
        assert g.has_edge(0, 1) and g.has_edge(1, 0)
        assert not g.has_edge(0, 2)


class TestNormalizedAdjacency:
    def test_single_edge(self):
        m = normalized_adjacency(path_graph(2))
        assert m.get(0, 1) == 1.0
        assert m.get(0, 0) == 0.0

    def test_triangle_off_diagonals(self):
        m = normalized_adjacency(complete_graph(3))
        for i in range(3):
            for j in range(i + 1, 3):
                assert m.get(i, j) == pytest.approx(0.5)

    def test_complete_graph_spectral_norm_one(self):
        # Dense-oracle check: the all-ones vector is a unit eigenvector.
        m = normalized_adjacency(complete_graph(25))
        assert spectral_norm_sym(m) == pytest.approx(1.0, abs=1e-12)

    def test_isolated_vertex_rejected_by_name(self):
        g = load_edge_list("#n 4\n0 1\n1 2")
        with pytest.raises(IsolatedVertexError, match="vertex 3"):
            normalized_adjacency(g)

    def test_eigenvalues_within_unit_interval(self, rng):
        edges = []
        for i in range(60):
            for j in range(i + 1, 60):
                if rng.random() < 0.1:
                    edges.append((i, j, float(rng.uniform(0.2, 3.0))))
        for v in range(60):
            if not any(v in e[:2] for e in edges):
                edges.append((v, (v + 1) % 60, 1.0))
        g = WeightedGraph.from_edges(60, edges)
        spec = eig_sym_dense(normalized_adjacency(g))
        assert np.all(np.abs(spec.values) <= 1 + 1e-9)
