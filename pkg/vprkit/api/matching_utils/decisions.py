"""
Matching decisions M from a similarity matrix S.

single_best keeps the most similar database row of every query column;
multi_match keeps every cell above a threshold. Excluded cells are never
matched.
"""

import logging
from typing import Optional

import numpy as np

from vprkit.api.matching_utils.exclusion import apply_exclusion, exclusion_mask
from vprkit.core.exceptions import MatchingError
from vprkit.models.data import MatchMatrix, MatchMode, SimilarityMatrix

logger = logging.getLogger(__name__)

OTSU_BINS = 256


def best_match_rows(values: np.ndarray) -> np.ndarray:
    """Argmax row per column (ties -> lowest row), -1 where the column has no eligible cell."""
    eligible = np.isfinite(values)
    rows = np.argmax(np.where(eligible, values, -np.inf), axis=0)
    return np.where(eligible.any(axis=0), rows, -1)


def best_match_per_query(
    similarity: SimilarityMatrix,
    exclusion_halfwidth: Optional[int] = None,
    online: bool = False,
) -> MatchMatrix:
    if exclusion_halfwidth is not None or online:
        similarity = apply_exclusion(
            similarity, exclusion_mask(similarity.shape, exclusion_halfwidth, online)
        )
    rows = best_match_rows(similarity.values)
    matches = np.zeros(similarity.shape, dtype=bool)
    matched_cols = np.flatnonzero(rows >= 0)
    matches[rows[matched_cols], matched_cols] = True
    if len(matched_cols) < similarity.shape[1]:
        logger.debug(f"{similarity.shape[1] - len(matched_cols)} queries have no eligible row")
    return MatchMatrix(matches=matches, mode=MatchMode.SINGLE_BEST)


def threshold_match(similarity: SimilarityMatrix, theta: float) -> MatchMatrix:
    values = similarity.values
    matches = (values >= theta) & similarity.eligible
    return MatchMatrix(matches=matches, mode=MatchMode.MULTI_MATCH)


def threshold_best_matches(best: MatchMatrix, similarity: SimilarityMatrix, theta: float) -> MatchMatrix:
    """Keep a single-best match only when its similarity reaches `theta`."""
    matches = best.matches & (similarity.values >= theta)
    return MatchMatrix(matches=matches, mode=MatchMode.SINGLE_BEST)


def auto_threshold(similarity: SimilarityMatrix) -> float:
    """
    Otsu threshold over the eligible similarities.

    A 256-bin histogram on [min, max] is split where the between-class
    variance peaks (first peak on ties); the threshold is the lower edge of
    the first bin above the split.
    """
    values = similarity.values[similarity.eligible]
    if np.unique(values).size < 2:
        raise MatchingError("auto threshold: no separation, S has fewer than 2 distinct values")

    counts, edges = np.histogram(values, bins=OTSU_BINS, range=(values.min(), values.max()))
    centers = (edges[:-1] + edges[1:]) / 2
    total = counts.sum()

    # Class 0 = bins [0, k), class 1 = bins [k, 256), for k = 1 .. 255
    weight0 = np.cumsum(counts)[:-1]
    weight1 = total - weight0
    mass0 = np.cumsum(counts * centers)[:-1]
    mass1 = (counts * centers).sum() - mass0
    with np.errstate(divide="ignore", invalid="ignore"):
        mean0 = np.where(weight0 > 0, mass0 / weight0, 0.0)
        mean1 = np.where(weight1 > 0, mass1 / weight1, 0.0)
    between = weight0 * weight1 * (mean0 - mean1) ** 2

    split = int(np.argmax(between)) + 1
    theta = float(edges[split])
    logger.debug(f"Otsu threshold {theta:.6g} (split after bin {split - 1})")
    return theta


def match_similarity(
    similarity: SimilarityMatrix,
    mode: MatchMode | str,
    threshold: Optional[float | str] = None,
) -> tuple[MatchMatrix, Optional[float]]:
    """
    Matching decision for one run: returns M and the threshold actually used.

    `threshold` is a number, "auto" (Otsu) or None. An explicit "auto" that
    finds no separation raises MatchingError. multi_match without a threshold
    falls back to "auto"; there the failure is logged and M stays empty.
    """
    mode = MatchMode(mode)
    implicit = mode is MatchMode.MULTI_MATCH and threshold is None
    if implicit:
        threshold = "auto"

    theta: Optional[float] = None
    if threshold == "auto":
        try:
            theta = auto_threshold(similarity)
        except MatchingError as exc:
            if not implicit:
                raise
            logger.warning(f"{exc}; no threshold applied")
    elif threshold is not None:
        theta = float(threshold)

    if mode is MatchMode.SINGLE_BEST:
        best = best_match_per_query(similarity)
        return (best if theta is None else threshold_best_matches(best, similarity, theta)), theta
    if theta is None:
        empty = np.zeros(similarity.shape, dtype=bool)
        return MatchMatrix(matches=empty, mode=MatchMode.MULTI_MATCH), None
    return threshold_match(similarity, theta), theta
