"""
Confusion counting under hard and soft ground truth.

Cells that are soft but not hard matches (¬gt ∧ gt_soft) are ignored: a
match there is neither a true nor a false positive. True negatives are not
counted at all.
"""

import numpy as np

from vprkit.core.exceptions import DimensionError, EvaluationError
from vprkit.models.data import GroundTruth, MatchMatrix, MatchMode
from vprkit.models.evaluation import ConfusionCounts


def ground_truth_positives(gt: np.ndarray, mode: MatchMode) -> int:
    """Queries with at least one true match (single_best) or all true pairs (multi_match)."""
    if mode is MatchMode.SINGLE_BEST:
        return int(gt.any(axis=0).sum())
    return int(gt.sum())


def confusion_counts(
    matches: MatchMatrix, ground_truth: GroundTruth, mode: MatchMode | str | None = None
) -> ConfusionCounts:
    mode = MatchMode(mode) if mode is not None else matches.mode
    m = matches.matches
    gt = np.asarray(ground_truth.gt, dtype=bool)
    gt_soft = np.asarray(ground_truth.gt_soft, dtype=bool)
    if m.shape != gt.shape or gt.shape != gt_soft.shape:
        raise DimensionError(
            f"matches {m.shape}, GT {gt.shape} and GT_soft {gt_soft.shape} must share one shape"
        )
    if mode is MatchMode.SINGLE_BEST and (m.sum(axis=0) > 1).any():
        raise EvaluationError("single_best evaluation needs at most one match per query")

    tp = int((gt & m).sum())
    fp = int((~gt & ~gt_soft & m).sum())
    gtp = ground_truth_positives(gt, mode)
    return ConfusionCounts(tp=tp, fp=fp, fn=gtp - tp, gtp=gtp, mode=mode)


def precision_recall_point(counts: ConfusionCounts) -> tuple[float, float]:
    """(P, R) of a single matching decision; P is 1 when nothing was matched."""
    return counts.precision, counts.recall
