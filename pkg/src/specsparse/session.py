"""Query-counted oracle access to a graph.

A session wraps an immutable graph with the three query procedures and
exact counters.  Sessions are single-owner: concurrent pipelines should
open separate sessions over the same shared graph.
"""

from __future__ import annotations

import numpy as np

from .errors import SpecsparseError
from .graph import WeightedGraph


class QuerySession:
    """Counting wrapper exposing get_neighbor / get_edge / random_neighbor.

    The random-neighbor stream is a pure function of ``rng_seed``: each
    draw consumes exactly two uniform variates (vertex, edge), so a batch
    of k draws reproduces k sequential single draws bit for bit.
    """

    def __init__(self, graph: WeightedGraph, rng_seed: int = 0):
        self.graph = graph
        self.rng_seed = int(rng_seed)
        self.neighbor_queries = 0
        self.edge_queries = 0
        self.random_queries = 0
        self._rng = np.random.default_rng(np.random.SeedSequence(self.rng_seed))

    def get_neighbor(self, a: int, i: int) -> tuple[float, tuple[int, float] | None]:
        """Weighted degree of ``a`` and its i-th heaviest edge (i >= 1).

        Returns (deg, None) when a has fewer than i incident edges.
        """
        entry = self.graph.neighbor_entry(a, i)
        self.neighbor_queries += 1
        return float(self.graph.degrees[a]), entry

    def get_edge(self, u: int, v: int) -> bool:
        result = self.graph.has_edge(u, v)
        self.edge_queries += 1
        return result

    def random_neighbor(self):
        """One draw: a uniform vertex plus a weight-proportional edge.

        Returns (a, None) when the drawn vertex is isolated, otherwise
        (a, (b, deg_a, deg_b)).
        """
        a, b, da, db = self.random_neighbor_many(1)
        if b[0] < 0:
            return int(a[0]), None
        return int(a[0]), (int(b[0]), float(da[0]), float(db[0]))

    def random_neighbor_many(self, k: int):
        """k draws at once; equivalent to k sequential random_neighbor calls.

        Returns arrays (a, b, deg_a, deg_b) with b = -1 marking draws whose
        vertex was isolated (deg_b = 0 there).  Counts k queries.
        """
        if k < 0:
            raise SpecsparseError(f"draw count must be >= 0, got {k}")
        g = self.graph
        n = g.n
        if n == 0:
            raise SpecsparseError("cannot sample from an empty graph")
        u = self._rng.random((k, 2))
        self.random_queries += k
        a = np.minimum((u[:, 0] * n).astype(np.int64), n - 1)
        deg_a = g.degrees[a]
        b = np.full(k, -1, dtype=np.int64)
        cumw, indptr, adj_dst = g._sampling_tables()
        counts = indptr[1:] - indptr[:-1]
        live = np.flatnonzero(counts[a] > 0)
        if live.size:
            order = np.argsort(a[live], kind="stable")
            live = live[order]
            av = a[live]
            starts = np.flatnonzero(np.r_[True, av[1:] != av[:-1]])
            bounds = np.r_[starts, av.size]
            for s, t in zip(bounds[:-1], bounds[1:]):
                vtx = int(av[s])
                lo, hi = int(indptr[vtx]), int(indptr[vtx + 1])
                targets = u[live[s:t], 1] * g.degrees[vtx]
                pos = np.searchsorted(cumw[lo:hi], targets, side="right")
                np.clip(pos, 0, hi - lo - 1, out=pos)
                b[live[s:t]] = adj_dst[lo + pos]
        deg_b = np.where(b >= 0, g.degrees[np.maximum(b, 0)], 0.0)
        return a, b, deg_a.astype(np.float64), deg_b
