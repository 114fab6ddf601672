"""Normalized power moments of sparse symmetric matrices.

The j-th moment is (1/n) Tr(M^j), the j-th moment of the matrix's
eigenvalue distribution.  The exact path expands matrix powers column by
column (splitting M^j = M^a M^b with a = ceil(j/2)), touching only entries
reachable within ceil(j/2) hops of each row, so uniformly row-sparse
matrices admit exact traces without materializing any power of M.  The
randomized path estimates the same quantities with random-sign probe
vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SpecsparseError, WorkCapError
from .sparse import SparseSymMatrix

DEFAULT_WORK_CAP = 512.0


@dataclass
class MomentVector:
    """values[j-1] = (1/n) Tr(M^j) for j = 1..q."""

    q: int
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.shape != (self.q,):
            raise SpecsparseError(
                f"expected {self.q} moments, got shape {self.values.shape}"
            )


def exact_power_moments(
    m: SparseSymMatrix,
    q: int,
    *,
    work_cap: float = DEFAULT_WORK_CAP,
    block: int = 128,
) -> MomentVector:
    """Exact normalized power moments, deterministic, no randomness.

    Requires q * log2(max row nnz) to stay within ``work_cap``; the cost of
    the local expansion is exponential in that product.
    """
    if q < 1:
        raise SpecsparseError(f"moment count must be >= 1, got {q}")
    n = m.n
    r = max(m.max_row_nnz(), 2)
    budget = q * math.log2(r)
    if budget > work_cap:
        raise WorkCapError(
            f"q={q} with row sparsity {r} needs work {budget:.1f} > cap {work_cap:g}"
        )
    if n == 0:
        return MomentVector(q, np.zeros(q))
    half = (q + 1) // 2
    traces = np.zeros(q + 1, dtype=np.float64)
    for lo in range(0, n, block):
        hi = min(lo + block, n)
        u = np.zeros((n, hi - lo), dtype=np.float64)
        u[np.arange(lo, hi), np.arange(hi - lo)] = 1.0
        powers = [u]
        for _ in range(half):
            powers.append(m.spmm(powers[-1]))
        for j in range(1, q + 1):
            a = (j + 1) // 2
            traces[j] += float(np.einsum("ij,ij->", powers[a], powers[j - a]))
    return MomentVector(q, traces[1:] / n)


def hutchinson_power_moments(
    m: SparseSymMatrix,
    q: int,
    probes: int,
    seed: int = 0,
) -> MomentVector:
    """Unbiased probe-vector estimates of the normalized power moments.

    Each probe g is a uniform +-1 vector; the estimate of (1/n) Tr(M^j) is
    the probe average of g^T M^j g / n, with the power iterates shared
    across all j.  Deterministic given the seed.
    """
    if q < 1:
        raise SpecsparseError(f"moment count must be >= 1, got {q}")
    if probes < 1:
        raise SpecsparseError(f"probe count must be >= 1, got {probes}")
    n = m.n
    if n == 0:
        return MomentVector(q, np.zeros(q))
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    g = (rng.integers(0, 2, size=(n, probes)) * 2 - 1).astype(np.float64)
    values = np.empty(q, dtype=np.float64)
    u = g
    for j in range(1, q + 1):
        u = m.spmm(u)
        values[j - 1] = float(np.einsum("ij,ij->", g, u)) / (n * probes)
    return MomentVector(q, values)
