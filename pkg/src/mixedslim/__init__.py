"""Mixed-membership community detection via the symmetrized Laplacian inverse matrix."""

from .dcmm import DcmmParams, expected_adjacency, experiment1_params, sample_adjacency
from .errors import InputError, NumericalError
from .graph import AdjacencyMatrix, degree_stats, load_edge_list, save_edge_list, validate
from .membership import (
    ClusterOptions,
    MixedSlimResult,
    harden,
    ideal_mixed_slim,
    kmedians,
    mixed_slim,
    reconstruct,
)
from .metrics import ErrorReport, hard_error_count, mixed_hamming_error
from .slim import (
    NormalizedEmbedding,
    SlimConfig,
    SpectralEmbedding,
    a4_diagnostic,
    build_slim,
    leading_eigenpairs,
    row_normalize,
)

__version__ = "0.1.0"

__all__ = [
    "AdjacencyMatrix",
    "ClusterOptions",
    "DcmmParams",
    "ErrorReport",
    "InputError",
    "MixedSlimResult",
    "NormalizedEmbedding",
    "NumericalError",
    "SlimConfig",
    "SpectralEmbedding",
    "a4_diagnostic",
    "build_slim",
    "degree_stats",
    "expected_adjacency",
    "experiment1_params",
    "hard_error_count",
    "harden",
    "ideal_mixed_slim",
    "kmedians",
    "leading_eigenpairs",
    "load_edge_list",
    "mixed_hamming_error",
    "mixed_slim",
    "reconstruct",
    "row_normalize",
    "sample_adjacency",
    "save_edge_list",
    "validate",
]
