"""End-to-end spectral density estimation pipelines.

Both pipelines sparsify at half the target accuracy, extract normalized
power moments of the sparsifier, reconstruct a density matching those
moments, and read off n quantiles.  Sparsification contributes at most
eps/2 of Wasserstein error; the remainder is the reconstruction budget.
Below a small dimension threshold the exact dense eigendecomposition is
returned instead.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .density import DensityEstimate, density_to_eigenvalues, moment_match
from .eig import DEFAULT_DENSE_CAP, Spectrum, eig_sym_dense
from .errors import SpecsparseError
from .graph import normalized_adjacency
from .greedy import greedy_nuclear_sparsify
from .moments import DEFAULT_WORK_CAP, MomentVector, exact_power_moments, hutchinson_power_moments
from .session import QuerySession

DEFAULT_MOMENT_SCALE = 8.0  # q = ceil(scale / eps) moments
DEFAULT_GRID_FACTOR = 8  # grid size = factor * q + 1
DEFAULT_DENSE_THRESHOLD = 64
DEFAULT_MISMATCH_TOL = 0.02


@dataclass
class SdeRun:
    """Result of one spectral density estimation run."""

    spectrum: Spectrum
    moments: MomentVector | None
    density: DensityEstimate | None
    summary: dict = field(default_factory=dict)


def format_spectrum(spec: Spectrum) -> str:
    """CSV serialization: one eigenvalue per line, 17 significant digits."""
    return "\n".join(f"{x:.17g}" for x in spec.values) + "\n"


def moment_count(eps: float, moment_scale: float = DEFAULT_MOMENT_SCALE) -> int:
    return math.ceil(moment_scale / eps)


def default_probes(eps: float) -> int:
    return math.ceil(16.0 / eps)


def _dense_fallback(session: QuerySession, started: float) -> SdeRun:
    n = session.graph.n
    spec = eig_sym_dense(normalized_adjacency(session.graph))
    summary = {
        "n": n,
        "mode": "dense-fallback",
        "neighbor_queries": session.neighbor_queries,
        "edge_queries": session.edge_queries,
        "random_queries": session.random_queries,
        "seconds_total": time.perf_counter() - started,
    }
    return SdeRun(spectrum=spec, moments=None, density=None, summary=summary)


def _finish(
    session: QuerySession,
    eps: float,
    mode: str,
    mv: MomentVector,
    grid_factor: int,
    started: float,
    timings: dict,
) -> SdeRun:
    grid_size = grid_factor * mv.q + 1
    t0 = time.perf_counter()
    density = moment_match(mv, grid_size, tol=DEFAULT_MISMATCH_TOL)
    timings["seconds_match"] = time.perf_counter() - t0
    spec = density_to_eigenvalues(density, session.graph.n)
    summary = {
        "n": session.graph.n,
        "mode": mode,
        "eps": eps,
        "q": mv.q,
        "grid_size": grid_size,
        "sparsify_eps": eps / 2.0,
        "moment_mismatch": density.max_mismatch,
        "moments_matched": density.matched,
        "neighbor_queries": session.neighbor_queries,
        "edge_queries": session.edge_queries,
        "random_queries": session.random_queries,
        **timings,
    }
    summary["seconds_total"] = time.perf_counter() - started
    return SdeRun(spectrum=spec, moments=mv, density=density, summary=summary)


def sde_deterministic(
    session: QuerySession,
    eps: float,
    *,
    moment_scale: float = DEFAULT_MOMENT_SCALE,
    grid_factor: int = DEFAULT_GRID_FACTOR,
    dense_threshold: int = DEFAULT_DENSE_THRESHOLD,
    work_cap: float = DEFAULT_WORK_CAP,
) -> SdeRun:
    """Deterministic pipeline: greedy sparsifier + exact power traces.

    A pure function of (graph, eps): repeated runs produce bit-identical
    spectra.  Fails up front (work-cap error) when q * log2(row sparsity)
    is too large for exact trace expansion.
    """
    if not (0.0 < eps < 1.0):
        raise SpecsparseError(f"eps must be in (0, 1), got {eps}")
    started = time.perf_counter()
    if session.graph.n < dense_threshold:
        return _dense_fallback(session, started)
    timings = {}
    t0 = time.perf_counter()
    sparsifier = greedy_nuclear_sparsify(session, eps / 2.0)
    timings["seconds_sparsify"] = time.perf_counter() - t0
    q = moment_count(eps, moment_scale)
    t0 = time.perf_counter()
    mv = exact_power_moments(sparsifier, q, work_cap=work_cap)
    timings["seconds_moments"] = time.perf_counter() - t0
    run = _finish(session, eps, "deterministic", mv, grid_factor, started, timings)
    run.summary["sparsifier_nnz"] = sparsifier.nnz
    return run


def sde_randomized(
    session: QuerySession,
    eps: float,
    seed: int = 0,
    *,
    probes: int | None = None,
    moment_scale: float = DEFAULT_MOMENT_SCALE,
    grid_factor: int = DEFAULT_GRID_FACTOR,
    dense_threshold: int = DEFAULT_DENSE_THRESHOLD,
) -> SdeRun:
    """Randomized pipeline: greedy sparsifier + probe-vector trace estimates."""
    if not (0.0 < eps < 1.0):
        raise SpecsparseError(f"eps must be in (0, 1), got {eps}")
    started = time.perf_counter()
    if session.graph.n < dense_threshold:
        return _dense_fallback(session, started)
    if probes is None:
        probes = default_probes(eps)
    timings = {}
    t0 = time.perf_counter()
    sparsifier = greedy_nuclear_sparsify(session, eps / 2.0)
    timings["seconds_sparsify"] = time.perf_counter() - t0
    q = moment_count(eps, moment_scale)
    t0 = time.perf_counter()
    mv = hutchinson_power_moments(sparsifier, q, probes, seed=seed)
    timings["seconds_moments"] = time.perf_counter() - t0
    run = _finish(session, eps, "randomized", mv, grid_factor, started, timings)
    run.summary["probes"] = probes
    run.summary["seed"] = seed
    run.summary["sparsifier_nnz"] = sparsifier.nnz
    return run


def validate_against_dense(
    run: SdeRun, session: QuerySession, *, dense_cap: int = DEFAULT_DENSE_CAP
) -> float:
    """Wasserstein-1 distance of a run's spectrum from the dense oracle.

    Stores the value in the run summary and returns it.
    """
    from .eig import wasserstein1

    oracle = eig_sym_dense(normalized_adjacency(session.graph), dense_cap=dense_cap)
    w1 = wasserstein1(run.spectrum, oracle)
    run.summary["w1_vs_dense"] = w1
    return w1
