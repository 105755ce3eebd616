"""
Descriptor extraction, aggregation, standardization and reduction.
"""

from vprkit.api.descriptor_utils.holistic import holistic_patchnorm, extract_holistic_batch
from vprkit.api.descriptor_utils.local import extract_local_grid, extract_local_batch
from vprkit.api.descriptor_utils.kmeans import kmeans_fit, assign_to_codebook
from vprkit.api.descriptor_utils.aggregation import (
    bovw_histogram,
    aggregate_bovw,
    aggregate_vlad,
)
from vprkit.api.descriptor_utils.standardization import (
    standardize_fit,
    standardize_apply,
    standardize,
    cluster_standardize,
)
from vprkit.api.descriptor_utils.projection import (
    ProjectionKind,
    projection_matrix,
    random_projection,
)
from vprkit.api.descriptor_utils.pca import pca_fit, pca_apply, pca_reconstruct
from vprkit.api.descriptor_utils.serialization import (
    write_codebook,
    read_codebook,
    write_pca_basis,
    read_pca_basis,
)

__all__ = [
    # Extraction
    "holistic_patchnorm",
    "extract_holistic_batch",
    "extract_local_grid",
    "extract_local_batch",
    # Codebooks and aggregation
    "kmeans_fit",
    "assign_to_codebook",
    "bovw_histogram",
    "aggregate_bovw",
    "aggregate_vlad",
    # Standardization
    "standardize_fit",
    "standardize_apply",
    "standardize",
    "cluster_standardize",
    # Reduction
    "ProjectionKind",
    "projection_matrix",
    "random_projection",
    "pca_fit",
    "pca_apply",
    "pca_reconstruct",
    # Files
    "write_codebook",
    "read_codebook",
    "write_pca_basis",
    "read_pca_basis",
]
