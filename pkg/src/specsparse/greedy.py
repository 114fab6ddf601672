"""Deterministic greedy sparsification of the normalized adjacency matrix.

Keeps exactly the edges whose weight is large relative to both endpoint
degrees and renormalizes them by the original degrees.  The result has at
most 2/eps^2 nonzeros per row, spectral norm at most 1, and approximates
the normalized adjacency within eps^2 * n in squared Frobenius norm (hence
within eps * n in nuclear norm).
"""

from __future__ import annotations

import math

import numpy as np

from .errors import IsolatedVertexError, SpecsparseError
from .graph import WeightedGraph
from .session import QuerySession
from .sparse import SparseSymMatrix


def edge_keep_predicate(w: float, deg_u: float, deg_v: float, eps: float) -> bool:
    """True iff the edge survives thresholding at accuracy eps."""
    return w >= 0.5 * eps * eps * max(deg_u, deg_v)


def greedy_nuclear_sparsify(session: QuerySession, eps: float) -> SparseSymMatrix:
    """Run the greedy threshold sparsifier through the neighbor oracle.

    Consumes only get_neighbor queries (at most 2n + 2n/eps^2 of them) and
    is a deterministic function of the graph.  Degrees learned from the
    oracle are cached so each vertex's degree is queried at most once
    outside its own scan.
    """
    if not (0.0 < eps < 1.0):
        raise SpecsparseError(f"eps must be in (0, 1), got {eps}")
    n = session.graph.n
    t = 0.5 * eps * eps
    deg = np.full(n, np.nan)
    out = SparseSymMatrix(n)
    for v in range(n):
        i = 1
        while True:
            deg_v, entry = session.get_neighbor(v, i)
            if deg_v <= 0.0:
                raise IsolatedVertexError(f"vertex {v} is isolated; cannot sparsify")
            deg[v] = deg_v
            if entry is None:
                break
            nbr, w = entry
            if w < t * deg_v:
                break
            dn = deg[nbr]
            if math.isnan(dn):
                dn, _ = session.get_neighbor(nbr, 1)
                deg[nbr] = dn
            if w >= t * dn:
                # Edge passes both endpoint thresholds; the mirrored
                # discovery from nbr writes the identical value.
                out.set(v, nbr, w / math.sqrt(deg_v * dn))
            i += 1
    return out


def graphicalize(m: SparseSymMatrix, graph: WeightedGraph, eps: float) -> WeightedGraph:
    """Convert a sparsifier into a graph whose normalization stays close.

    Re-indexes vertices by non-increasing degree, rescales ``m`` back to
    edge-weight space, preserves the first n-1 row sums exactly by routing
    the slack through the minimum-degree vertex, and undoes the
    permutation.  Requires eps^-2 <= n and a sparsifier whose squared
    Frobenius error is within n * eps^2; under those hypotheses the
    normalized adjacency of the result is within 3 * n * eps of the
    original in nuclear norm.
    """
    n = graph.n
    if m.n != n:
        raise SpecsparseError("sparsifier dimension does not match graph")
    if n < 2:
        raise SpecsparseError("conversion needs at least two vertices")
    if not (0.0 < eps < 1.0):
        raise SpecsparseError(f"eps must be in (0, 1), got {eps}")
    if eps * eps * n < 1.0:
        raise SpecsparseError(f"requires eps^-2 <= n, got eps={eps}, n={n}")
    deg = graph.degrees
    if float(deg.min()) <= 0.0:
        v = int(np.argmin(deg))
        raise IsolatedVertexError(f"vertex {v} is isolated")

    order = np.argsort(-deg, kind="stable")  # original ids, by degree desc
    pos = np.empty(n, dtype=np.int64)
    pos[order] = np.arange(n)
    deg_sorted = deg[order]
    last = n - 1

    # Q = D^{1/2} m D^{1/2} in permuted coordinates, dropping the last
    # column/row which is replaced by the slack vector.
    drop_tol = 1e-15
    row_sum = np.zeros(n, dtype=np.float64)
    kept: list[tuple[int, int, float]] = []
    for i, j, v in m.entries():
        if i == j:
            raise SpecsparseError(f"sparsifier has a diagonal entry at {i}; not graphical")
        q = v * math.sqrt(deg[i] * deg[j])
        if q < -drop_tol:
            raise SpecsparseError(f"negative rescaled entry at ({i}, {j}): {q}")
        pi, pj = int(pos[i]), int(pos[j])
        if pi != last and pj != last and abs(q) >= drop_tol:
            # Entries below drop_tol and the last row/column fold into the
            # slack, keeping the first n-1 row sums exact.
            row_sum[pi] += q
            row_sum[pj] += q
            kept.append((pi, pj, q))

    slack = deg_sorted[:last] - row_sum[:last]
    bad = np.flatnonzero(slack < -1e-12)
    if bad.size:
        i = int(bad[0])
        raise SpecsparseError(
            f"negative slack {slack[i]:g} at vertex {int(order[i])}; "
            "input is outside the conversion hypotheses"
        )
    edges = [(order[i], order[j], q) for i, j, q in kept]
    for i in range(last):
        e = float(slack[i])
        if e >= drop_tol:
            edges.append((int(order[i]), int(order[last]), e))
    return WeightedGraph.from_edges(n, edges)
