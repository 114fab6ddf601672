"""Reconstructing an eigenvalue density from its power moments.

Fits a finitely supported distribution on a uniform grid over [-1, 1] by
minimizing the squared moment mismatch over the probability simplex with
exponentiated-gradient (mirror descent) steps.  The returned object is
always a valid distribution; when the mismatch cannot be driven below the
requested tolerance the result is flagged rather than rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SpecsparseError
from .eig import Spectrum
from .moments import MomentVector

DEFAULT_MAX_ITERS = 50_000
DEFAULT_STEP_SCALE = 8.0
_REL_DECREASE_STOP = 1e-12
_PLATEAU_PATIENCE = 300


@dataclass
class DensityEstimate:
    """Discrete probability distribution on sorted support points in [-1, 1]."""

    support: np.ndarray
    weights: np.ndarray
    max_mismatch: float | None = field(default=None, compare=False)
    matched: bool | None = field(default=None, compare=False)

    def __post_init__(self):
        self.support = np.asarray(self.support, dtype=np.float64)
        self.weights = np.asarray(self.weights, dtype=np.float64)
        if self.support.shape != self.weights.shape or self.support.ndim != 1:
            raise SpecsparseError("support and weights must be 1-d arrays of equal length")
        if np.any(np.diff(self.support) < 0):
            raise SpecsparseError("support must be sorted ascending")
        if self.support.size:
            if self.support[0] < -1.0 - 1e-12 or self.support[-1] > 1.0 + 1e-12:
                raise SpecsparseError("support must lie in [-1, 1]")
        if np.any(self.weights < 0):
            raise SpecsparseError("weights must be nonnegative")
        if abs(float(self.weights.sum()) - 1.0) > 1e-10:
            raise SpecsparseError(f"weights sum to {self.weights.sum()}, expected 1")


def moment_match(
    mv: MomentVector,
    grid_size: int,
    tol: float = 1e-3,
    *,
    max_iters: int = DEFAULT_MAX_ITERS,
    step_scale: float = DEFAULT_STEP_SCALE,
) -> DensityEstimate:
    """Least-squares moment fit on the simplex over a uniform [-1, 1] grid.

    Multiplicative-weight steps with a 1/sqrt(t) schedule, the gradient
    normalized to unit range so the step scale is dimensionless.  Stops
    early once the objective has gone ``_PLATEAU_PATIENCE`` iterations
    without a relative decrease of 1e-12.  The fit is flagged
    (``matched=False``) if any moment mismatch exceeds ``tol``.
    """
    q = mv.q
    if grid_size < q + 1:
        raise SpecsparseError(f"grid_size must be >= q + 1 = {q + 1}, got {grid_size}")
    grid = np.linspace(-1.0, 1.0, grid_size)
    # vand[j - 1, k] = grid_k^j
    vand = np.empty((q, grid_size), dtype=np.float64)
    row = np.ones(grid_size, dtype=np.float64)
    for j in range(q):
        row = row * grid
        vand[j] = row
    target = mv.values

    w = np.full(grid_size, 1.0 / grid_size)
    resid = vand @ w - target
    best = float(resid @ resid)
    stale = 0
    for t in range(1, max_iters + 1):
        grad = 2.0 * (vand.T @ resid)
        grad -= grad.min()
        spread = float(grad.max())
        if spread > 0.0:
            grad /= spread
        w = w * np.exp(-(step_scale / np.sqrt(t)) * grad)
        w /= float(w.sum())
        resid = vand @ w - target
        obj = float(resid @ resid)
        if obj == 0.0:
            break
        if obj < best * (1.0 - _REL_DECREASE_STOP):
            best = obj
            stale = 0
        else:
            stale += 1
            if stale >= _PLATEAU_PATIENCE:
                break

    mismatch = float(np.abs(resid).max())
    return DensityEstimate(
        support=grid,
        weights=w,
        max_mismatch=mismatch,
        matched=bool(mismatch <= tol),
    )


def density_to_eigenvalues(d: DensityEstimate, n: int) -> Spectrum:
    """The ((i - 1/2)/n)-quantiles of the density, i = 1..n, sorted."""
    if n < 1:
        raise SpecsparseError(f"eigenvalue count must be >= 1, got {n}")
    if d.support.size == 0:
        raise SpecsparseError("cannot take quantiles of an empty density")
    cum = np.cumsum(d.weights)
    targets = (np.arange(n) + 0.5) / n
    idx = np.searchsorted(cum, targets, side="left")
    np.clip(idx, 0, d.support.size - 1, out=idx)
    return Spectrum(d.support[idx])
