"""
Sequence-based refinement.

Places are traversed in order, so true matches form short linear segments
in S. `seq_refine` scores each cell by the best mean similarity along a
segment through it; `sequence_descriptors` folds a window of frames into one
descriptor instead.
"""

import enum
import logging

import numpy as np

from vprkit.core.exceptions import SizeError
from vprkit.models.data import DescriptorMatrix, MetricTag, SimilarityMatrix
from vprkit.models.similarity import SeqParams

logger = logging.getLogger(__name__)


class SequenceMode(str, enum.Enum):
    CONCAT = "concat"
    MEAN = "mean"
    DELTA = "delta"


def seq_refine(similarity: SimilarityMatrix, params: SeqParams) -> SimilarityMatrix:
    """
    s'_ij = max over slopes v of mean_t S[i + rint(v·t), j + t], t = -(L-1)/2 .. (L-1)/2.

    Indices outside S are clamped to the border, so every estimate averages
    exactly L samples. L=1 returns S unchanged.
    """
    values = similarity.values
    if params.length == 1:
        return SimilarityMatrix(values=values, metric_tag=MetricTag.REFINED)

    rows, cols = values.shape
    half = (params.length - 1) // 2
    offsets_t = np.arange(-half, half + 1)
    row_index = np.arange(rows)
    col_index = np.arange(cols)

    best = np.full((rows, cols), -np.inf)
    for v in params.velocities():
        total = np.zeros((rows, cols))
        for t, row_offset in zip(offsets_t, np.rint(v * offsets_t).astype(np.int64)):
            sample_rows = np.clip(row_index + row_offset, 0, rows - 1)
            sample_cols = np.clip(col_index + t, 0, cols - 1)
            total += values[np.ix_(sample_rows, sample_cols)]
        np.maximum(best, total / params.length, out=best)

    logger.debug(
        f"Sequence refinement L={params.length} over {params.v_steps} slopes on {values.shape}"
    )
    return SimilarityMatrix(values=best, metric_tag=MetricTag.REFINED)


def _l2_rows(values: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(values, axis=1, keepdims=True)
    return np.divide(values, norms, out=np.zeros_like(values), where=norms > 0)


def sequence_descriptors(
    descriptors: DescriptorMatrix, length: int, mode: SequenceMode | str = SequenceMode.CONCAT
) -> DescriptorMatrix:
    """Combine the centred window of `length` frames around every frame (borders replicated)."""
    mode = SequenceMode(mode)
    n = descriptors.n
    if length < 1 or length % 2 == 0:
        raise ValueError(f"sequence length must be odd and >= 1, got {length}")
    if length > n:
        raise SizeError(f"sequence length {length} exceeds the {n} available frames")

    half = (length - 1) // 2
    offsets = np.arange(-half, half + 1)
    # windows[t] holds, for every frame, the frame at offset t
    windows = descriptors.values[np.clip(np.arange(n)[None, :] + offsets[:, None], 0, n - 1)]

    if mode is SequenceMode.CONCAT:
        values = np.concatenate(list(windows), axis=1)
    elif mode is SequenceMode.MEAN:
        values = windows.mean(axis=0)
    elif half == 0:
        values = np.zeros_like(descriptors.values)
    else:
        values = _l2_rows(windows[half + 1 :].mean(axis=0) - windows[:half].mean(axis=0))
    return descriptors.with_values(values)
