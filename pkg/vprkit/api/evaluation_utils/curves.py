"""
Precision-recall curves and the scalar metrics derived from them.
"""

import logging
from typing import Optional

import numpy as np

from vprkit.api.evaluation_utils.counts import ground_truth_positives
from vprkit.api.matching_utils.decisions import best_match_rows
from vprkit.core.exceptions import DimensionError, EvaluationError
from vprkit.models.data import GroundTruth, MatchMode, SimilarityMatrix
from vprkit.models.evaluation import PRCurve

logger = logging.getLogger(__name__)

MAX_THRESHOLDS = 1000


def threshold_grid(scores: np.ndarray, cap: int = MAX_THRESHOLDS) -> np.ndarray:
    """
    Unique scores in descending order, subsampled by quantile to at most `cap`.

    The subsample always keeps the largest and the smallest score.
    """
    unique = np.unique(scores)
    if unique.size > cap:
        picks = np.unique(np.rint(np.linspace(0, unique.size - 1, cap)).astype(np.int64))
        unique = unique[picks]
    return unique[::-1]


def _candidate_cells(similarity: SimilarityMatrix, mode: MatchMode) -> tuple[np.ndarray, np.ndarray]:
    """(row, col) of the cells a threshold is applied to."""
    if mode is MatchMode.SINGLE_BEST:
        rows = best_match_rows(similarity.values)
        cols = np.flatnonzero(rows >= 0)
        return rows[cols], cols
    return np.nonzero(similarity.eligible)


def pr_curve(
    similarity: SimilarityMatrix, ground_truth: GroundTruth, mode: MatchMode | str = MatchMode.MULTI_MATCH
) -> PRCurve:
    """
    Sweep θ over the unique eligible scores: M(θ) = S ≥ θ on candidate cells.

    The grid is the same in both modes. Candidates are all eligible cells for
    multi_match and the best-match cell of each query for single_best.
    """
    mode = MatchMode(mode)
    gt = np.asarray(ground_truth.gt, dtype=bool)
    gt_soft = np.asarray(ground_truth.gt_soft, dtype=bool)
    if gt.shape != similarity.shape or gt_soft.shape != similarity.shape:
        raise DimensionError(f"S is {similarity.shape} but GT is {gt.shape}")

    gtp = ground_truth_positives(gt, mode)
    if gtp == 0:
        raise EvaluationError("no ground-truth positives")

    eligible = similarity.values[similarity.eligible]
    if eligible.size == 0:
        raise EvaluationError("no eligible similarity cells to threshold")
    rows, cols = _candidate_cells(similarity, mode)
    scores = similarity.values[rows, cols]
    positive = np.sort(scores[gt[rows, cols]])
    negative = np.sort(scores[~gt[rows, cols] & ~gt_soft[rows, cols]])

    thetas = threshold_grid(eligible)
    # Counts of scores >= θ via binary search on the sorted score lists
    tp = positive.size - np.searchsorted(positive, thetas, side="left")
    fp = negative.size - np.searchsorted(negative, thetas, side="left")
    matched = tp + fp
    precision = np.where(matched > 0, tp / np.maximum(matched, 1), 1.0)
    recall = tp / gtp

    logger.debug(f"PR curve ({mode.value}): {thetas.size} thresholds, gtp={gtp}")
    return PRCurve(thetas=thetas, precision=precision, recall=recall, mode=mode)


def auprc(curve: PRCurve, from_origin: bool = False) -> float:
    """
    Trapezoidal area under precision over recall.

    Points are stably sorted by recall, so repeated recall values add no
    width. By default only the achieved recall range is integrated;
    `from_origin` first anchors the curve at (R=0, P=1).
    """
    if len(curve) == 0:
        raise EvaluationError("cannot integrate an empty PR curve")
    order = np.argsort(curve.recall, kind="stable")
    recall, precision = curve.recall[order], curve.precision[order]
    if from_origin:
        recall = np.concatenate([[0.0], recall])
        precision = np.concatenate([[1.0], precision])
    area = float(np.sum(np.diff(recall) * (precision[1:] + precision[:-1]) / 2))
    return min(max(area, 0.0), 1.0)


def recall_at_precision(curve: PRCurve, p_level: float) -> Optional[float]:
    """Largest recall reached with precision >= p_level; None when no point qualifies."""
    if not 0.0 < p_level <= 1.0:
        raise ValueError(f"precision level must lie in (0, 1], got {p_level}")
    qualifying = curve.precision >= p_level
    if not qualifying.any():
        return None
    return float(curve.recall[qualifying].max())
