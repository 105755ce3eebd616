"""Exhaustive top-K retrieval per query column."""

import numpy as np

from vprkit.models.data import SimilarityMatrix
from vprkit.models.similarity import TopKResult


def knn_topk(similarity: SimilarityMatrix, k: int) -> TopKResult:
    """K best database rows per query, similarity descending, ties -> lower row index."""
    rows = similarity.shape[0]
    if not 1 <= k <= rows:
        raise ValueError(f"K must lie in [1, {rows}], got {k}")
    # Stable sort on the negated column keeps equal values in row order
    order = np.argsort(-similarity.values, axis=0, kind="stable")[:k]
    scores = np.take_along_axis(similarity.values, order, axis=0)
    return TopKResult(indices=order.T, similarities=scores.T)
