"""Sublinear-query nuclear sparsification and spectral density estimation."""

from .density import DensityEstimate, density_to_eigenvalues, moment_match
from .eig import (
    DEFAULT_DENSE_CAP,
    Spectrum,
    blockwise_nuclear_lower_bound,
    eig_sym_dense,
    frobenius_norm,
    nuclear_norm_sym,
    spectral_norm_sym,
    wasserstein1,
)
from .errors import (
    DenseCapError,
    GraphFormatError,
    IsolatedVertexError,
    SpecsparseError,
    WorkCapError,
)
from .graph import WeightedGraph, dump_edge_list, load_edge_list, normalized_adjacency
from .greedy import edge_keep_predicate, graphicalize, greedy_nuclear_sparsify
from .instances import (
    PairedBlockInstance,
    complement_flip,
    coupon_cover_draws,
    coupon_pair_graph,
    erdos_renyi,
    paired_block_instance,
    tiled_er_instance,
    weighted_erdos_renyi,
)
from .moments import MomentVector, exact_power_moments, hutchinson_power_moments
from .randwalk import (
    default_nuclear_samples,
    default_spectral_samples,
    rw_nuclear_sparsify,
    rw_spectral_sparsify,
)
from .resisting import (
    ResistingSession,
    cut_witness_gap,
    replay_transcript,
    resisting_oracle_finalize,
    resisting_oracle_step,
)
from .sde import SdeRun, sde_deterministic, sde_randomized, validate_against_dense
from .session import QuerySession
from .sparse import SparseSymMatrix

__all__ = [
    "DEFAULT_DENSE_CAP",
    "DenseCapError",
    "DensityEstimate",
    "GraphFormatError",
    "IsolatedVertexError",
    "MomentVector",
    "PairedBlockInstance",
    "QuerySession",
    "ResistingSession",
    "SdeRun",
    "SparseSymMatrix",
    "SpecsparseError",
    "Spectrum",
    "WeightedGraph",
    "WorkCapError",
    "blockwise_nuclear_lower_bound",
    "complement_flip",
    "coupon_cover_draws",
    "coupon_pair_graph",
    "cut_witness_gap",
    "default_nuclear_samples",
    "default_spectral_samples",
    "density_to_eigenvalues",
    "dump_edge_list",
    "edge_keep_predicate",
    "eig_sym_dense",
    "erdos_renyi",
    "exact_power_moments",
    "frobenius_norm",
    "graphicalize",
    "greedy_nuclear_sparsify",
    "hutchinson_power_moments",
    "load_edge_list",
    "moment_match",
    "normalized_adjacency",
    "nuclear_norm_sym",
    "paired_block_instance",
    "replay_transcript",
    "resisting_oracle_finalize",
    "resisting_oracle_step",
    "rw_nuclear_sparsify",
    "rw_spectral_sparsify",
    "sde_deterministic",
    "sde_randomized",
    "spectral_norm_sym",
    "tiled_er_instance",
    "validate_against_dense",
    "wasserstein1",
    "weighted_erdos_renyi",
]
