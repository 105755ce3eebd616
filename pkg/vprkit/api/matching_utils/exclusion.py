"""
Recent-frame suppression for single-session runs.

When a sequence is matched against itself, the frames just before and after
a query trivially look alike. A band |i - j| <= halfwidth is therefore
removed from S; the growing-database (online) formulation additionally
removes every database row recorded after the query.
"""

from typing import Optional

import numpy as np

from vprkit.core.exceptions import MatchingError
from vprkit.models.data import EXCLUDED, SimilarityMatrix


def exclusion_mask(
    shape: tuple[int, int], halfwidth: Optional[int] = None, online: bool = False
) -> np.ndarray:
    """True for cells that stay eligible."""
    rows, cols = shape
    if (halfwidth is not None or online) and rows != cols:
        raise MatchingError(f"exclusion needs a square single-session S, got {rows}x{cols}")
    if halfwidth is not None and halfwidth < 0:
        raise ValueError(f"exclusion halfwidth must be >= 0, got {halfwidth}")

    i = np.arange(rows)[:, None]
    j = np.arange(cols)[None, :]
    mask = np.ones((rows, cols), dtype=bool)
    if halfwidth is not None:
        mask &= np.abs(i - j) > halfwidth
    if online:
        mask &= i <= j
    return mask


def apply_exclusion(similarity: SimilarityMatrix, mask: np.ndarray) -> SimilarityMatrix:
    if mask.shape != similarity.shape:
        raise MatchingError(f"mask shape {mask.shape} does not match S {similarity.shape}")
    values = np.where(mask, similarity.values, EXCLUDED)
    return SimilarityMatrix(values=values, metric_tag=similarity.metric_tag)
