"""
Local feature matching and hierarchical re-ranking.

Holistic similarities pick K candidates per query; the candidates are then
re-scored by mutual nearest-neighbour matching of local features. Cells
outside the candidate set are excluded rather than mixed with holistic
scores.
"""

import logging
from typing import Sequence

import numpy as np

from vprkit.api.similarity_utils.matrix import cosine_similarity
from vprkit.core.exceptions import DimensionError, SizeError
from vprkit.models.data import EXCLUDED, LocalFeatureSet, MetricTag, SimilarityMatrix
from vprkit.models.similarity import TopKResult

logger = logging.getLogger(__name__)


def mutual_match_score(a: LocalFeatureSet, b: LocalFeatureSet) -> float:
    """
    Fraction of mutual nearest neighbours under cosine similarity.

    A pair (x, y) counts when y is x's nearest neighbour in `b` and x is y's
    nearest neighbour in `a`; ties go to the lowest index. Two singleton
    sets are always each other's nearest neighbours and score 1.
    """
    if a.k < 1 or b.k < 1:
        raise SizeError("mutual matching needs at least one feature on each side")
    if a.d != b.d:
        raise DimensionError(f"local features have d={a.d} and d={b.d}")

    sims = cosine_similarity(a.vectors, b.vectors)
    nearest_in_b = np.argmax(sims, axis=1)
    nearest_in_a = np.argmax(sims, axis=0)
    mutual = int(np.sum(nearest_in_a[nearest_in_b] == np.arange(a.k)))
    return mutual / min(a.k, b.k)


def rerank_topk(
    similarity: SimilarityMatrix,
    topk: TopKResult,
    local_db: Sequence[LocalFeatureSet],
    local_q: Sequence[LocalFeatureSet],
) -> SimilarityMatrix:
    rows, cols = similarity.shape
    if len(local_db) != rows or len(local_q) != cols:
        raise SizeError(
            f"re-ranking needs local features for {rows} database and {cols} query images, "
            f"got {len(local_db)} and {len(local_q)}"
        )
    if topk.n_queries != cols:
        raise SizeError(f"top-K result covers {topk.n_queries} queries, S has {cols}")

    values = np.full((rows, cols), EXCLUDED, dtype=np.float64)
    for j, candidates in enumerate(topk.indices):
        for i in candidates:
            values[i, j] = mutual_match_score(local_db[i], local_q[j])
    logger.debug(f"Re-ranked top-{topk.k} candidates of {cols} queries")
    return SimilarityMatrix(values=values, metric_tag=MetricTag.REFINED)
