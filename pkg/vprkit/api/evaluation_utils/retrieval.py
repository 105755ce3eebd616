import logging

import numpy as np

from vprkit.api.similarity_utils.retrieval import knn_topk
from vprkit.core.exceptions import DimensionError, EvaluationError
from vprkit.models.data import GroundTruth, SimilarityMatrix
from vprkit.models.evaluation import RecallAtK

logger = logging.getLogger(__name__)


def recall_at_k(
    similarity: SimilarityMatrix, ground_truth: GroundTruth, k: int, skip_unmatched: bool = True
) -> RecallAtK:
    """
    Share of queries whose K most similar database images include a true match.

    Queries without any true match cannot succeed; they are skipped and
    counted, or rejected when `skip_unmatched` is False. K larger than the
    database is clamped; excluded cells never count as hits.
    """
    if k < 1:
        raise ValueError(f"K must be >= 1, got {k}")
    gt = np.asarray(ground_truth.gt, dtype=bool)
    if gt.shape != similarity.shape:
        raise DimensionError(f"S is {similarity.shape} but GT is {gt.shape}")

    has_match = gt.any(axis=0)
    skipped = int((~has_match).sum())
    if skipped and not skip_unmatched:
        raise EvaluationError(f"{skipped} queries have no ground-truth match")

    depth = min(k, similarity.shape[0])
    candidates = knn_topk(similarity, depth).indices.T
    cols = np.arange(similarity.shape[1])[None, :]
    hits = gt[candidates, cols] & np.isfinite(similarity.values[candidates, cols])
    successes = hits.any(axis=0) & has_match

    evaluated = int(has_match.sum())
    if evaluated == 0:
        logger.warning("recall@K undefined: no query has a ground-truth match")
        return RecallAtK(k=k, recall=None, evaluated=0, skipped=skipped)
    return RecallAtK(k=k, recall=float(successes.sum() / evaluated), evaluated=evaluated, skipped=skipped)
