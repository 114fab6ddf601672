"""Randomized sparsifiers driven by one-step random walk queries.

Both estimators draw T weight-proportional edges through the session's
random_neighbor oracle and accumulate unbiased increments, so the expected
output equals the normalized adjacency entrywise.  The nuclear variant adds
a symmetric pair of increments per draw; the additive-spectral variant
flips a coin for the side receiving the increment and is symmetrized before
being returned.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import IsolatedVertexError, SpecsparseError
from .seeding import STREAM_COIN, derive_rng
from .session import QuerySession
from .sparse import SparseSymMatrix


def default_nuclear_samples(n: int, eps: float) -> int:
    """T = ceil(3 n / eps^2), enough for a 2/3 success probability."""
    return math.ceil(3.0 * n / (eps * eps))


def default_spectral_samples(n: int, eps: float, p_fail: float) -> int:
    """T = ceil(256 n log(2n / p_fail) / eps^2)."""
    return math.ceil(256.0 * n * math.log(2.0 * n / p_fail) / (eps * eps))


def _draw_edges(session: QuerySession, T: int):
    a, b, da, db = session.random_neighbor_many(T)
    dead = np.flatnonzero(b < 0)
    if dead.size:
        raise IsolatedVertexError(
            f"random draw hit isolated vertex {int(a[dead[0]])}"
        )
    return a, b, da, db


def _collapse(rows: np.ndarray, cols: np.ndarray, vals: np.ndarray, n: int):
    """Sum duplicate (row, col) increments; returns sorted unique triples."""
    keys = rows * n + cols
    uniq, inverse = np.unique(keys, return_inverse=True)
    sums = np.bincount(inverse, weights=vals, minlength=uniq.size)
    return uniq // n, uniq % n, sums


def rw_nuclear_sparsify(
    session: QuerySession, eps: float, T: int | None = None
) -> SparseSymMatrix:
    """Monte Carlo nuclear sparsifier from T one-step walk queries.

    With the default T = 3n/eps^2 the squared Frobenius error is below
    n * eps^2 (hence nuclear error below n * eps) with probability >= 2/3.
    """
    if not (0.0 < eps < 1.0):
        raise SpecsparseError(f"eps must be in (0, 1), got {eps}")
    n = session.graph.n
    if T is None:
        T = default_nuclear_samples(n, eps)
    if T < 1:
        raise SpecsparseError(f"sample count must be >= 1, got {T}")
    a, b, da, db = _draw_edges(session, T)
    inc = n * np.sqrt(da / db) / (2.0 * T)
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    rows, cols, sums = _collapse(lo, hi, inc, n)
    out = SparseSymMatrix(n)
    for i, j, v in zip(rows.tolist(), cols.tolist(), sums.tolist()):
        out.add(int(i), int(j), v)
    return out


def rw_spectral_sparsify(
    session: QuerySession,
    eps: float,
    p_fail: float = 1.0 / 3.0,
    T: int | None = None,
    *,
    coin_seed: int | None = None,
    keep_raw: bool = False,
):
    """Additive-spectral sparsifier from T coin-split one-sided increments.

    The accumulated matrix is divided by T (the estimator concentrates
    around its mean) and symmetrized; with the default T the spectral norm
    of the deviation is at most eps with probability >= 1 - p_fail.  With
    ``keep_raw=True`` also returns the scaled asymmetric accumulation as a
    dict keyed by ordered index pairs, for distributional testing.
    """
    if not (0.0 < eps < 1.0):
        raise SpecsparseError(f"eps must be in (0, 1), got {eps}")
    if not (0.0 < p_fail < 1.0):
        raise SpecsparseError(f"p_fail must be in (0, 1), got {p_fail}")
    n = session.graph.n
    if T is None:
        T = default_spectral_samples(n, eps, p_fail)
    if T < 1:
        raise SpecsparseError(f"sample count must be >= 1, got {T}")
    if coin_seed is None:
        coin_seed = session.rng_seed
    coin = derive_rng(coin_seed, STREAM_COIN)
    a, b, da, db = _draw_edges(session, T)
    z = coin.random(T) < 0.5
    inc = (2.0 * n / (np.sqrt(da) * np.sqrt(db))) / (1.0 / da + 1.0 / db) / T
    rows = np.where(z, a, b)
    cols = np.where(z, b, a)
    urows, ucols, sums = _collapse(rows, cols, inc, n)

    sym = SparseSymMatrix(n)
    for i, j, v in zip(urows.tolist(), ucols.tolist(), sums.tolist()):
        sym.add(int(i), int(j), 0.5 * v)
    if not keep_raw:
        return sym
    raw = {
        (int(i), int(j)): float(v)
        for i, j, v in zip(urows.tolist(), ucols.tolist(), sums.tolist())
    }
    return sym, raw
