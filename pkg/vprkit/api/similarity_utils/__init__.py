"""
Similarity matrices, retrieval, re-ranking and sequence refinement.
"""

from vprkit.api.similarity_utils.matrix import (
    DistanceConversion,
    similarity_matrix,
    cosine_similarity,
    dist_to_sim,
    is_eligible,
)
from vprkit.api.similarity_utils.retrieval import knn_topk
from vprkit.api.similarity_utils.local_matching import mutual_match_score, rerank_topk
from vprkit.api.similarity_utils.sequences import (
    SequenceMode,
    seq_refine,
    sequence_descriptors,
)
from vprkit.api.similarity_utils.heatmap import heatmap_image, export_heatmap

__all__ = [
    "DistanceConversion",
    "similarity_matrix",
    "cosine_similarity",
    "dist_to_sim",
    "is_eligible",
    "knn_topk",
    "mutual_match_score",
    "rerank_topk",
    "SequenceMode",
    "seq_refine",
    "sequence_descriptors",
    "heatmap_image",
    "export_heatmap",
]
