"""Symmetric sparse matrices addressed by unordered index pairs.

The storage model keeps one canonical value per unordered pair {i, j}
(i == j allowed), so the matrix is symmetric by construction.  The nonzero
count follows the full-matrix convention: an off-diagonal pair contributes
two nonzeros, a diagonal entry one.
"""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

from .errors import SpecsparseError

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


@njit(cache=True)
def _csr_matvec(indptr, indices, data, x, out):
    n = indptr.shape[0] - 1
    for i in range(n):
        acc = 0.0
        for p in range(indptr[i], indptr[i + 1]):
            acc += data[p] * x[indices[p]]
        out[i] = acc


@njit(cache=True)
def _csr_matmat(indptr, indices, data, x, out):
    n = indptr.shape[0] - 1
    b = x.shape[1]
    for i in range(n):
        for p in range(indptr[i], indptr[i + 1]):
            v = data[p]
            j = indices[p]
            for c in range(b):
                out[i, c] += v * x[j, c]


class SparseSymMatrix:
    """n-by-n symmetric matrix with hash-addressed entries."""

    def __init__(self, n: int):
        if n < 0:
            raise SpecsparseError(f"matrix dimension must be >= 0, got {n}")
        self.n = n
        self._entries: dict[tuple[int, int], float] = {}
        self._row_nnz = np.zeros(n, dtype=np.int64)
        self._csr = None

    @classmethod
    def from_entries(cls, n: int, items: Iterable[tuple[int, int, float]]) -> "SparseSymMatrix":
        m = cls(n)
        for i, j, v in items:
            m.set(i, j, v)
        return m

    @classmethod
    def from_dense(cls, a: np.ndarray, drop_tol: float = 0.0) -> "SparseSymMatrix":
        a = np.asarray(a, dtype=np.float64)
        n = a.shape[0]
        if a.shape != (n, n):
            raise SpecsparseError(f"expected a square array, got shape {a.shape}")
        if not np.array_equal(a, a.T):
            raise SpecsparseError("input array is not symmetric")
        m = cls(n)
        for i in range(n):
            for j in range(i, n):
                if abs(a[i, j]) > drop_tol:
                    m.set(i, j, float(a[i, j]))
        return m

    def _key(self, i: int, j: int) -> tuple[int, int]:
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise SpecsparseError(f"index ({i}, {j}) out of range for dimension {self.n}")
        return (i, j) if i <= j else (j, i)

    def get(self, i: int, j: int) -> float:
        return self._entries.get(self._key(i, j), 0.0)

    def set(self, i: int, j: int, value: float) -> None:
        key = self._key(i, j)
        present = key in self._entries
        if value == 0.0:
            if present:
                del self._entries[key]
                self._bump_row_nnz(key, -1)
        else:
            self._entries[key] = float(value)
            if not present:
                self._bump_row_nnz(key, +1)
        self._csr = None

    def add(self, i: int, j: int, value: float) -> None:
        """Add ``value`` to the symmetric entry {i, j} in place."""
        key = self._key(i, j)
        if key in self._entries:
            self._entries[key] += value
        else:
            self._entries[key] = float(value)
            self._bump_row_nnz(key, +1)
        self._csr = None

    def _bump_row_nnz(self, key: tuple[int, int], delta: int) -> None:
        i, j = key
        self._row_nnz[i] += delta
        if i != j:
            self._row_nnz[j] += delta

    @property
    def nnz(self) -> int:
        """Nonzero count with off-diagonal pairs counted twice."""
        return int(self._row_nnz.sum())

    def row_nnz(self, i: int | None = None):
        if i is None:
            return self._row_nnz.copy()
        return int(self._row_nnz[i])

    def max_row_nnz(self) -> int:
        return int(self._row_nnz.max()) if self.n else 0

    def entries(self) -> Iterator[tuple[int, int, float]]:
        """Canonical (i <= j) entries in insertion order."""
        for (i, j), v in self._entries.items():
            yield i, j, v

    def __len__(self) -> int:
        return len(self._entries)

    # -- numeric kernels ---------------------------------------------------

    def _build_csr(self):
        if self._csr is not None:
            return self._csr
        k = len(self._entries)
        rows = np.empty(2 * k, dtype=np.int64)
        cols = np.empty(2 * k, dtype=np.int64)
        vals = np.empty(2 * k, dtype=np.float64)
        t = 0
        for (i, j), v in self._entries.items():
            rows[t], cols[t], vals[t] = i, j, v
            t += 1
            if i != j:
                rows[t], cols[t], vals[t] = j, i, v
                t += 1
        rows, cols, vals = rows[:t], cols[:t], vals[:t]
        order = np.lexsort((cols, rows))
        rows, cols, vals = rows[order], cols[order], vals[order]
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.add.at(indptr, rows + 1, 1)
        np.cumsum(indptr, out=indptr)
        self._csr = (indptr, cols, vals)
        return self._csr

    def spmv(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.n,):
            raise SpecsparseError(f"vector of length {x.shape} does not match dimension {self.n}")
        indptr, indices, data = self._build_csr()
        out = np.empty(self.n, dtype=np.float64)
        _csr_matvec(indptr, indices, data, x, out)
        return out

    def spmm(self, x: np.ndarray) -> np.ndarray:
        """Sparse-times-dense product against an (n, b) block of vectors."""
        x = np.ascontiguousarray(x, dtype=np.float64)
        if x.ndim != 2 or x.shape[0] != self.n:
            raise SpecsparseError(f"block of shape {x.shape} does not match dimension {self.n}")
        indptr, indices, data = self._build_csr()
        out = np.zeros_like(x)
        _csr_matmat(indptr, indices, data, x, out)
        return out

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.float64)
        for (i, j), v in self._entries.items():
            a[i, j] = v
            a[j, i] = v
        return a

    def frobenius_norm(self) -> float:
        acc = 0.0
        for (i, j), v in self._entries.items():
            acc += v * v if i == j else 2.0 * v * v
        return float(np.sqrt(acc))

    def copy(self) -> "SparseSymMatrix":
        m = SparseSymMatrix(self.n)
        m._entries = dict(self._entries)
        m._row_nnz = self._row_nnz.copy()
        return m

    def diff(self, other: "SparseSymMatrix") -> "SparseSymMatrix":
        if other.n != self.n:
            raise SpecsparseError("dimension mismatch")
        out = self.copy()
        for i, j, v in other.entries():
            out.add(i, j, -v)
        return out

    # -- serialization -----------------------------------------------------

    def dumps(self) -> str:
        """Coordinate text, one canonical ``i j value`` entry per pair."""
        lines = [f"#n {self.n}"]
        for i, j in sorted(self._entries):
            lines.append(f"{i} {j} {self._entries[(i, j)]:.17g}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "SparseSymMatrix":
        n = None
        triples = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if line.startswith("#n"):
                n = int(line.split()[1])
                continue
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise SpecsparseError(f"line {lineno}: expected 'i j value', got {raw!r}")
            i, j, v = int(parts[0]), int(parts[1]), float(parts[2])
            if i > j:
                raise SpecsparseError(f"line {lineno}: entries must have i <= j")
            triples.append((i, j, v))
        if n is None:
            n = 1 + max((j for _, j, _ in triples), default=-1)
        return cls.from_entries(n, triples)
