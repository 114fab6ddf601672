"""Dense symmetric eigensolver, norms, and the spectral Wasserstein-1 metric.

The eigensolver is implemented in-repo (Householder tridiagonalization
followed by implicit-shift QL iteration) so that the validation oracle has
no dependence on platform LAPACK builds; given fixed inputs it is
bit-stable across runs.  It is intended for validation work at moderate
dimension and is guarded by a configurable cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DenseCapError, SpecsparseError
from .sparse import SparseSymMatrix

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

DEFAULT_DENSE_CAP = 4096

_EPS = float(np.finfo(np.float64).eps)


@njit(cache=True)
def _householder_tridiag(a, d, e, h_out):
    """Reduce symmetric ``a`` (lower triangle) to tridiagonal (d, e) in place.

    After the call, column k of ``a`` below the diagonal holds the
    Householder vector of step k and ``h_out[k]`` its half squared norm
    (0 when the step was skipped).
    """
    n = a.shape[0]
    v = np.empty(n, dtype=np.float64)
    for k in range(n - 2):
        sigma2 = 0.0
        for i in range(k + 1, n):
            sigma2 += a[i, k] * a[i, k]
        x0 = a[k + 1, k]
        if sigma2 == 0.0:
            e[k] = 0.0
            h_out[k] = 0.0
            continue
        sigma = math.sqrt(sigma2)
        alpha = -sigma if x0 >= 0.0 else sigma
        h = sigma2 - alpha * x0  # = ||v||^2 / 2 for v = x - alpha*e1
        a[k + 1, k] = x0 - alpha
        e[k] = alpha
        h_out[k] = h
        for i in range(k + 1, n):
            v[i] = a[i, k]
        # p = A_sub @ v / h, row-major passes over the lower triangle.
        for i in range(k + 1, n):
            d[i] = a[i, i] * v[i]
        for i in range(k + 2, n):
            vi = v[i]
            acc = 0.0
            for j in range(k + 1, i):
                acc += a[i, j] * v[j]
            d[i] += acc
            for j in range(k + 1, i):
                d[j] += a[i, j] * vi
        kappa = 0.0
        for i in range(k + 1, n):
            d[i] /= h
            kappa += d[i] * v[i]
        kappa /= 2.0 * h
        # q = p - kappa*v, then rank-two update A -= v q^T + q v^T.
        for i in range(k + 1, n):
            d[i] -= kappa * v[i]
        for i in range(k + 1, n):
            vi = v[i]
            qi = d[i]
            for j in range(k + 1, i + 1):
                a[i, j] -= vi * d[j] + qi * v[j]
    for i in range(n):
        d[i] = a[i, i]
    if n >= 2:
        e[n - 2] = a[n - 1, n - 2]


@njit(cache=True)
def _accumulate_q(a, h_out, z):
    """Form the orthogonal Q of the reduction into ``z`` (initially identity)."""
    n = a.shape[0]
    for k in range(n - 2):
        h = h_out[k]
        if h == 0.0:
            continue
        # z <- z (I - v v^T / h), v stored in a[k+1:, k]
        for r in range(n):
            acc = 0.0
            for i in range(k + 1, n):
                acc += z[r, i] * a[i, k]
            acc /= h
            for i in range(k + 1, n):
                z[r, i] -= acc * a[i, k]


@njit(cache=True)
def _ql_implicit(d, e, z, with_vectors):
    """Implicit-shift QL iteration on a symmetric tridiagonal (d, e).

    ``e[i]`` couples d[i] and d[i+1]; e has length n with e[n-1] scratch.
    Returns 0 on success, 1 if an eigenvalue failed to converge.
    """
    n = d.shape[0]
    if n == 0:
        return 0
    e[n - 1] = 0.0
    for l in range(n):
        iters = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd:
                    break
                m += 1
            if m == l:
                break
            iters += 1
            if iters > 100:
                return 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            sgn = r if g >= 0.0 else -r
            g = d[m] - d[l] + e[l] / (g + sgn)
            s = 1.0
            c = 1.0
            p = 0.0
            broke = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    broke = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                if with_vectors:
                    for k in range(n):
                        f2 = z[k, i + 1]
                        z[k, i + 1] = s * z[k, i] + c * f2
                        z[k, i] = c * z[k, i] - s * f2
            if broke:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return 0


def _as_dense_sym(m) -> np.ndarray:
    if isinstance(m, SparseSymMatrix):
        return m.to_dense()
    a = np.array(m, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise SpecsparseError(f"expected a square matrix, got shape {a.shape}")
    scale = float(np.abs(a).max()) if a.size else 0.0
    if not np.allclose(a, a.T, rtol=0.0, atol=1e-12 * max(scale, 1.0)):
        raise SpecsparseError("matrix is not symmetric")
    return a


@dataclass
class Spectrum:
    """All n eigenvalues of a symmetric matrix, sorted non-decreasing."""

    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 1:
            raise SpecsparseError("spectrum must be one-dimensional")
        if np.any(np.diff(self.values) < 0):
            raise SpecsparseError("spectrum values must be sorted non-decreasing")

    def __len__(self) -> int:
        return len(self.values)


def eig_sym_dense(m, *, vectors: bool = False, dense_cap: int = DEFAULT_DENSE_CAP):
    """Full spectrum of a symmetric matrix by tridiagonal QL iteration.

    With ``vectors=True`` additionally returns the (n, n) matrix whose
    columns are the eigenvectors, in eigenvalue order.
    """
    a = _as_dense_sym(m)
    n = a.shape[0]
    if n > dense_cap:
        raise DenseCapError(f"dimension {n} exceeds dense cap {dense_cap}")
    if n == 0:
        spec = Spectrum(np.empty(0))
        return (spec, np.empty((0, 0))) if vectors else spec
    a = a.copy()
    d = np.empty(n, dtype=np.float64)
    e = np.empty(n, dtype=np.float64)
    h = np.empty(max(n - 2, 1), dtype=np.float64)
    if n == 1:
        d[0] = a[0, 0]
        e[0] = 0.0
    elif n == 2:
        d[0], d[1] = a[0, 0], a[1, 1]
        e[0] = a[1, 0]
    else:
        _householder_tridiag(a, d, e, h)
    if vectors:
        z = np.eye(n)
        if n > 2:
            _accumulate_q(a, h, z)
    else:
        z = np.empty((1, 1))
    status = _ql_implicit(d, e, z, vectors)
    if status != 0:
        raise ArithmeticError("QL iteration failed to converge")
    order = np.argsort(d, kind="stable")
    if vectors:
        return Spectrum(d[order]), z[:, order]
    return Spectrum(d[order])


def nuclear_norm_sym(m, *, dense_cap: int = DEFAULT_DENSE_CAP) -> float:
    """Sum of absolute eigenvalues."""
    spec = eig_sym_dense(m, dense_cap=dense_cap)
    return float(np.abs(spec.values).sum())


def spectral_norm_sym(m, *, dense_cap: int = DEFAULT_DENSE_CAP) -> float:
    """Largest absolute eigenvalue."""
    spec = eig_sym_dense(m, dense_cap=dense_cap)
    if len(spec) == 0:
        return 0.0
    return float(np.abs(spec.values).max())


def frobenius_norm(m) -> float:
    if isinstance(m, SparseSymMatrix):
        return m.frobenius_norm()
    a = np.asarray(m, dtype=np.float64)
    return float(np.sqrt((a * a).sum()))


def wasserstein1(a: Spectrum, b: Spectrum) -> float:
    """(1/n) sum_i |a_i - b_i| over the two sorted eigenvalue lists."""
    av = a.values if isinstance(a, Spectrum) else np.asarray(a, dtype=np.float64)
    bv = b.values if isinstance(b, Spectrum) else np.asarray(b, dtype=np.float64)
    if av.shape != bv.shape:
        raise SpecsparseError(f"spectra of lengths {av.size} and {bv.size} are not comparable")
    if av.size == 0:
        return 0.0
    return float(np.abs(av - bv).mean())


def blockwise_nuclear_lower_bound(
    m,
    partition: Sequence[Sequence[int]],
    *,
    dense_cap: int = DEFAULT_DENSE_CAP,
) -> float:
    """Sum of nuclear norms of the principal submatrices on a partition.

    Always a lower bound on the nuclear norm of the full matrix, with
    equality for block-diagonal matrices.
    """
    a = _as_dense_sym(m)
    n = a.shape[0]
    if n > dense_cap:
        raise DenseCapError(f"dimension {n} exceeds dense cap {dense_cap}")
    seen = np.zeros(n, dtype=bool)
    for block in partition:
        idx = np.asarray(block, dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= n):
            raise SpecsparseError("partition indexes out of range")
        if np.any(seen[idx]):
            raise SpecsparseError("partition blocks overlap")
        seen[idx] = True
    if not np.all(seen):
        raise SpecsparseError("partition does not cover every index")
    total = 0.0
    for block in partition:
        idx = np.asarray(block, dtype=np.int64)
        if idx.size == 0:
            continue
        sub = a[np.ix_(idx, idx)]
        total += nuclear_norm_sym(sub, dense_cap=dense_cap)
    return total
