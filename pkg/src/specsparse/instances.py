"""Random graph families used to probe sparsifier limits.

Erdos-Renyi blocks (plain and tiled), paired-block instances whose intra
-pair wiring is controlled by hidden Bernoulli bits, and coupon-collector
pair graphs.  Every generator is a pure function of its seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SpecsparseError
from .graph import WeightedGraph
from .session import QuerySession

DEFAULT_BLOCK_SCALE = 1.0  # paired-block b = floor(scale / eps^2)


def erdos_renyi(n: int, p: float, seed: int = 0) -> WeightedGraph:
    """G(n, p): each pair independently an edge with probability p, unit weight."""
    if n < 1:
        raise SpecsparseError(f"vertex count must be >= 1, got {n}")
    if not (0.0 <= p <= 1.0):
        raise SpecsparseError(f"edge probability must be in [0, 1], got {p}")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    us: list[np.ndarray] = []
    vs: list[np.ndarray] = []
    for i in range(n - 1):
        mask = rng.random(n - 1 - i) < p
        hit = np.flatnonzero(mask) + i + 1
        if hit.size:
            us.append(np.full(hit.size, i, dtype=np.int64))
            vs.append(hit)
    if us:
        eu = np.concatenate(us)
        ev = np.concatenate(vs)
    else:
        eu = np.empty(0, dtype=np.int64)
        ev = np.empty(0, dtype=np.int64)
    return WeightedGraph._from_arrays(n, eu, ev, np.ones(eu.size))


def weighted_erdos_renyi(n: int, p: float, seed: int = 0) -> WeightedGraph:
    """G(n, p) with i.i.d. Exp(1) edge weights."""
    base = erdos_renyi(n, p, seed)
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(1,)))
    edges = [(u, v, float(w)) for (u, v, _), w in zip(base.edges(), rng.exponential(1.0, base.num_edges))]
    return WeightedGraph.from_edges(n, edges)


def tiled_er_instance(n: int, eps: float, seed: int = 0) -> WeightedGraph:
    """Disjoint union of floor(n/b) dense random blocks, b ~ 1/eps^2.

    Remainder vertices are joined in a path (a single leftover vertex is
    attached to the last block) so every remainder vertex keeps degree >= 1.
    """
    if not (0.0 < eps < 1.0):
        raise SpecsparseError(f"eps must be in (0, 1), got {eps}")
    if n * eps * eps < 1.0:
        raise SpecsparseError(f"needs n >= 1/eps^2, got n={n}, eps={eps}")
    b = max(10, math.ceil(1.0 / (eps * eps)))
    b = min(b, n)
    k = n // b
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    edges: list[tuple[int, int, float]] = []
    for blk in range(k):
        base = blk * b
        for i in range(b - 1):
            mask = rng.random(b - 1 - i) < 0.5
            for j in np.flatnonzero(mask):
                edges.append((base + i, base + i + 1 + int(j), 1.0))
    rest = n - k * b
    if rest == 1:
        edges.append((n - 1, k * b - 1, 1.0))
    elif rest > 1:
        for v in range(k * b, n - 1):
            edges.append((v, v + 1, 1.0))
    return WeightedGraph.from_edges(n, edges)


@dataclass
class PairedBlockInstance:
    """A hidden-bit paired-block graph.

    Vertices come in k blocks of two groups of b; for each block r and
    ordered index pair (i, j), a Bernoulli bit selects parallel wiring
    (edges inside each group) or crossed wiring (edges across the two
    groups).  Parallel weights coincide for the two orders of (i, j) and
    accumulate, which keeps every instance exactly 2(b-1)-regular in
    weighted degree.
    """

    n: int
    b: int
    k: int
    bits: np.ndarray  # (k, b, b) boolean, diagonal unused
    graph: WeightedGraph

    def vertex_id(self, r: int, group: int, i: int) -> int:
        """Vertex i of group 1 or 2 in block r."""
        if not (0 <= r < self.k and group in (1, 2) and 0 <= i < self.b):
            raise SpecsparseError(f"no vertex (r={r}, group={group}, i={i})")
        return 2 * r * self.b + (group - 1) * self.b + i

    def locate(self, v: int) -> tuple[int, int, int]:
        """Inverse of vertex_id."""
        if not (0 <= v < self.n):
            raise SpecsparseError(f"vertex {v} out of range")
        r, off = divmod(v, 2 * self.b)
        group, i = divmod(off, self.b)
        return r, group + 1, i


def _graph_from_bits(n: int, b: int, k: int, bits: np.ndarray) -> WeightedGraph:
    acc: dict[tuple[int, int], float] = {}

    def bump(u: int, v: int):
        key = (u, v) if u < v else (v, u)
        acc[key] = acc.get(key, 0.0) + 1.0

    for r in range(k):
        one = 2 * r * b
        two = one + b
        block = bits[r]
        for i in range(b):
            for j in range(b):
                if i == j:
                    continue
                if block[i, j]:
                    bump(one + i, one + j)
                    bump(two + i, two + j)
                else:
                    bump(one + i, two + j)
                    bump(two + i, one + j)
    return WeightedGraph.from_edges(n, [(u, v, w) for (u, v), w in acc.items()])


def paired_block_instance(
    n: int,
    eps: float,
    seed: int = 0,
    *,
    b: int | None = None,
    block_scale: float = DEFAULT_BLOCK_SCALE,
) -> PairedBlockInstance:
    """Draw a paired-block instance on n = 2kb vertices.

    The block size defaults to b = floor(block_scale / eps^2); n must be a
    positive multiple of 2b.
    """
    if b is None:
        if not (0.0 < eps < 1.0):
            raise SpecsparseError(f"eps must be in (0, 1), got {eps}")
        b = int(block_scale / (eps * eps))
    if b < 2:
        raise SpecsparseError(f"block size must be >= 2, got {b}")
    if n < 2 * b or n % (2 * b) != 0:
        raise SpecsparseError(f"n must be a positive multiple of 2b = {2 * b}, got {n}")
    k = n // (2 * b)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    bits = rng.integers(0, 2, size=(k, b, b)).astype(bool)
    graph = _graph_from_bits(n, b, k, bits)
    return PairedBlockInstance(n=n, b=b, k=k, bits=bits, graph=graph)


def complement_flip(inst: PairedBlockInstance, revealed) -> WeightedGraph:
    """The wiring complement of the instance, except on revealed gadgets.

    ``revealed`` is an iterable of vertex pairs that were observed; each
    must lie inside one block's pair gadget.  The result agrees with the
    instance graph on every revealed pair and is again 2(b-1)-regular.
    """
    flipped = ~inst.bits
    for u, v in revealed:
        ru, gu, iu = inst.locate(int(u))
        rv, gv, iv = inst.locate(int(v))
        if ru != rv or iu == iv:
            raise SpecsparseError(f"revealed edge ({u}, {v}) is outside any block gadget")
        flipped[ru, iu, iv] = inst.bits[ru, iu, iv]
        flipped[ru, iv, iu] = inst.bits[ru, iv, iu]
    return _graph_from_bits(inst.n, inst.b, inst.k, flipped)


def coupon_pair_graph(n: int, seed: int = 0) -> WeightedGraph:
    """2n vertices in n candidate pairs (i, n+i), each an edge w.p. 1/2."""
    if n < 1:
        raise SpecsparseError(f"pair count must be >= 1, got {n}")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    present = np.flatnonzero(rng.random(n) < 0.5)
    edges = [(int(i), int(n + i), 1.0) for i in present]
    return WeightedGraph.from_edges(2 * n, edges)


def coupon_cover_draws(session: QuerySession, *, chunk: int = 2048) -> int:
    """Random-neighbor draws until every pair index has been observed.

    The session graph must be a coupon pair graph; vertex v maps to pair
    index v mod n.
    """
    n2 = session.graph.n
    if n2 % 2 != 0:
        raise SpecsparseError("coupon graphs have an even vertex count")
    n = n2 // 2
    seen = np.zeros(n, dtype=bool)
    remaining = n
    draws = 0
    while remaining > 0:
        a, _, _, _ = session.random_neighbor_many(chunk)
        for v in a.tolist():
            draws += 1
            i = v % n
            if not seen[i]:
                seen[i] = True
                remaining -= 1
                if remaining == 0:
                    break
    return draws
