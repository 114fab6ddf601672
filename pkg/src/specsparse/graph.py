"""Weighted undirected graphs with weight-sorted adjacency lists.

Each vertex stores its incident edges sorted by descending weight, ties
broken by ascending neighbor id, so "the i-th heaviest edge at v" is a
well-defined deterministic notion.  Graphs are immutable after
construction and safe for concurrent reads.
"""

from __future__ import annotations

import io
import math
from typing import Iterator

import numpy as np

from .errors import GraphFormatError, IsolatedVertexError, SpecsparseError
from .sparse import SparseSymMatrix


class WeightedGraph:
    """Immutable undirected graph with positive edge weights."""

    def __init__(self, n: int, eu: np.ndarray, ev: np.ndarray, ew: np.ndarray):
        # Callers should use from_edges / load_edge_list; inputs here are
        # assumed validated canonical arrays with eu < ev.
        self.n = int(n)
        self._eu = eu
        self._ev = ev
        self._ew = ew
        self.num_edges = int(eu.size)

        src = np.concatenate([eu, ev])
        dst = np.concatenate([ev, eu])
        w2 = np.concatenate([ew, ew])
        order = np.lexsort((dst, -w2, src))
        self._adj_dst = dst[order]
        self._adj_w = w2[order]
        self._indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.add.at(self._indptr, src + 1, 1)
        np.cumsum(self._indptr, out=self._indptr)

        degrees = np.zeros(self.n, dtype=np.float64)
        np.add.at(degrees, src[order], self._adj_w)
        self._degrees = degrees
        self._degrees.setflags(write=False)

        self._edge_set: frozenset | None = None
        self._cumw: np.ndarray | None = None

    # -- construction --------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges) -> "WeightedGraph":
        """Build from an iterable of (u, v, w) with 0-based vertex ids."""
        rows = list(edges)
        if rows:
            eu = np.array([r[0] for r in rows], dtype=np.int64)
            ev = np.array([r[1] for r in rows], dtype=np.int64)
            ew = np.array([r[2] for r in rows], dtype=np.float64)
        else:
            eu = np.empty(0, dtype=np.int64)
            ev = np.empty(0, dtype=np.int64)
            ew = np.empty(0, dtype=np.float64)
        return cls._from_arrays(n, eu, ev, ew)

    @classmethod
    def _from_arrays(cls, n, eu, ev, ew) -> "WeightedGraph":
        if n < 0:
            raise SpecsparseError(f"vertex count must be >= 0, got {n}")
        if eu.size:
            if eu.min() < 0 or ev.min() < 0 or max(eu.max(), ev.max()) >= n:
                raise SpecsparseError("edge endpoint out of range")
            if np.any(eu == ev):
                bad = int(eu[np.flatnonzero(eu == ev)[0]])
                raise SpecsparseError(f"self-loop at vertex {bad}")
            if np.any(ew <= 0):
                raise SpecsparseError("edge weights must be strictly positive")
        lo = np.minimum(eu, ev)
        hi = np.maximum(eu, ev)
        order = np.lexsort((hi, lo))
        lo, hi, ew = lo[order], hi[order], ew[order]
        if lo.size > 1:
            dup = (lo[1:] == lo[:-1]) & (hi[1:] == hi[:-1])
            if np.any(dup):
                k = np.flatnonzero(dup)[0]
                raise SpecsparseError(f"duplicate edge ({lo[k]}, {hi[k]})")
        return cls(n, lo, hi, ew)

    @classmethod
    def empty(cls, n: int) -> "WeightedGraph":
        return cls.from_edges(n, [])

    # -- reads ----------------------------------------------------------------

    @property
    def degrees(self) -> np.ndarray:
        """Weighted degrees, indexed by vertex."""
        return self._degrees

    def degree(self, v: int) -> float:
        self._check_vertex(v)
        return float(self._degrees[v])

    def neighbor_count(self, v: int) -> int:
        self._check_vertex(v)
        return int(self._indptr[v + 1] - self._indptr[v])

    def neighbors(self, v: int) -> tuple[np.ndarray, np.ndarray]:
        """(ids, weights) of v's incident edges, heaviest first."""
        self._check_vertex(v)
        lo, hi = self._indptr[v], self._indptr[v + 1]
        return self._adj_dst[lo:hi], self._adj_w[lo:hi]

    def neighbor_entry(self, v: int, i: int) -> tuple[int, float] | None:
        """The i-th heaviest edge at v (i >= 1), or None if deg(v) < i."""
        self._check_vertex(v)
        if i < 1:
            raise SpecsparseError(f"neighbor rank must be >= 1, got {i}")
        lo, hi = self._indptr[v], self._indptr[v + 1]
        if i > hi - lo:
            return None
        p = lo + i - 1
        return int(self._adj_dst[p]), float(self._adj_w[p])

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise SpecsparseError("edge membership is undefined for u == v")
        if self._edge_set is None:
            self._edge_set = frozenset(zip(self._eu.tolist(), self._ev.tolist()))
        return ((u, v) if u < v else (v, u)) in self._edge_set

    def edges(self) -> Iterator[tuple[int, int, float]]:
        """Canonical edges (u < v), sorted by (u, v)."""
        for u, v, w in zip(self._eu.tolist(), self._ev.tolist(), self._ew.tolist()):
            yield u, v, w

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise SpecsparseError(f"vertex {v} out of range for n={self.n}")

    def _sampling_tables(self):
        """Per-vertex prefix sums of adjacency weights, built on first use."""
        if self._cumw is None:
            cs = np.cumsum(self._adj_w)
            base = np.zeros(self.n, dtype=np.float64)
            starts = self._indptr[:-1]
            nonempty = starts < self._indptr[1:]
            base[nonempty] = cs[starts[nonempty]] - self._adj_w[starts[nonempty]]
            self._cumw = cs - np.repeat(base, np.diff(self._indptr))
        return self._cumw, self._indptr, self._adj_dst


# -- edge-list text format -----------------------------------------------


def load_edge_list(stream) -> WeightedGraph:
    """Parse edge-list text into a graph.

    Each non-empty, non-comment line is ``u v`` or ``u v w`` with 0-based
    ids and positive weight (default 1.0).  ``#`` starts a comment; a
    ``#n N`` header fixes the vertex count (allowing trailing isolated
    vertices).  Malformed lines, self-loops, duplicate edges, and
    non-positive weights are rejected with their line number.
    """
    if isinstance(stream, bytes):
        text = stream.decode("utf-8")
    elif isinstance(stream, str):
        text = stream
    elif isinstance(stream, io.IOBase) or hasattr(stream, "read"):
        raw = stream.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
    else:
        raise SpecsparseError(f"cannot read edge list from {type(stream)!r}")

    header_n: int | None = None
    us: list[int] = []
    vs: list[int] = []
    ws: list[float] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line.split()
            if parts[0] == "#n":
                if len(parts) != 2:
                    raise GraphFormatError("malformed '#n N' header", lineno)
                try:
                    header_n = int(parts[1])
                except ValueError:
                    raise GraphFormatError("malformed '#n N' header", lineno) from None
                if header_n < 0:
                    raise GraphFormatError("vertex count must be >= 0", lineno)
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise GraphFormatError(f"expected 'u v [w]', got {raw_line!r}", lineno)
        try:
            u = int(parts[0])
            v = int(parts[1])
            w = float(parts[2]) if len(parts) == 3 else 1.0
        except ValueError:
            raise GraphFormatError(f"cannot parse {raw_line!r}", lineno) from None
        if u < 0 or v < 0:
            raise GraphFormatError("vertex ids must be non-negative", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        if not math.isfinite(w) or w <= 0:
            raise GraphFormatError(f"weight must be a positive finite number, got {w}", lineno)
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphFormatError(f"duplicate edge ({key[0]}, {key[1]})", lineno)
        seen.add(key)
        us.append(u)
        vs.append(v)
        ws.append(w)

    max_id = max((max(us), max(vs))) if us else -1
    n = max_id + 1
    if header_n is not None:
        if header_n < n:
            raise GraphFormatError(
                f"header declares {header_n} vertices but ids reach {max_id}"
            )
        n = header_n
    return WeightedGraph.from_edges(n, zip(us, vs, ws))


def dump_edge_list(graph: WeightedGraph) -> str:
    """Canonical edge-list text: '#n N' header, edges sorted by (u, v)."""
    lines = [f"#n {graph.n}"]
    for u, v, w in graph.edges():
        lines.append(f"{u} {v} {w:.17g}")
    return "\n".join(lines) + "\n"


def normalized_adjacency(graph: WeightedGraph) -> SparseSymMatrix:
    """D^{-1/2} A D^{-1/2}: symmetric, all eigenvalues in [-1, 1].

    Rejects graphs with isolated vertices (zero degree has no inverse
    square root).
    """
    deg = graph.degrees
    if graph.n and float(deg.min()) <= 0.0:
        v = int(np.argmin(deg))
        raise IsolatedVertexError(f"vertex {v} is isolated; normalization undefined")
    out = SparseSymMatrix(graph.n)
    for u, v, w in graph.edges():
        out.set(u, v, w / math.sqrt(deg[u] * deg[v]))
    return out
