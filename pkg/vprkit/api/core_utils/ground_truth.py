"""
Ground-truth construction.

GT marks image pairs that show the same place; GT_soft additionally marks
pairs with small overlap, built here as a box dilation of GT so that
index-adjacent frames of a sequence count as soft matches.
"""

import logging
import os
from typing import Iterable, Optional

import cv2
import numpy as np

from vprkit.api.core_utils.bool_matrix import is_bool_matrix_file, read_bool_matrix
from vprkit.api.core_utils.text_files import read_pairs
from vprkit.core.exceptions import GroundTruthIndexError, SizeError
from vprkit.models.data import GroundTruth

logger = logging.getLogger(__name__)


def dilate(mask: np.ndarray, soft_radius: tuple[int, int]) -> np.ndarray:
    """Dilate a boolean matrix by a (2r_rows+1)×(2r_cols+1) box, clipped at the borders."""
    r_rows, r_cols = soft_radius
    if r_rows < 0 or r_cols < 0:
        raise ValueError(f"soft radius must be non-negative, got {soft_radius}")
    mask = np.asarray(mask, dtype=bool)
    if r_rows == 0 and r_cols == 0:
        return mask.copy()
    kernel = np.ones((2 * r_rows + 1, 2 * r_cols + 1), dtype=np.uint8)
    dilated = cv2.dilate(
        mask.astype(np.uint8),
        kernel,
        borderType=cv2.BORDER_CONSTANT,
        borderValue=0,
    )
    return dilated.astype(bool)


def build_ground_truth(
    pairs: Iterable[tuple[int, int]],
    shape: tuple[int, int],
    soft_radius: tuple[int, int] = (0, 0),
) -> GroundTruth:
    rows, cols = shape
    if rows < 1 or cols < 1:
        raise SizeError(f"ground-truth shape must be at least 1x1, got {shape}")
    gt = np.zeros((rows, cols), dtype=bool)
    for i, j in pairs:
        if not (0 <= i < rows and 0 <= j < cols):
            raise GroundTruthIndexError(f"pair ({i}, {j}) outside ground-truth shape {shape}")
        gt[i, j] = True
    return GroundTruth(gt=gt, gt_soft=dilate(gt, soft_radius))


def _read_mask(path: str | os.PathLike, shape: tuple[int, int]) -> np.ndarray:
    if is_bool_matrix_file(path):
        return read_bool_matrix(path)
    pairs = read_pairs(path)
    mask = np.zeros(shape, dtype=bool)
    for i, j in pairs:
        if not (0 <= i < shape[0] and 0 <= j < shape[1]):
            raise GroundTruthIndexError(f"{path}: pair ({i}, {j}) outside shape {shape}")
        mask[i, j] = True
    return mask


def read_ground_truth(
    gt_path: str | os.PathLike,
    shape: tuple[int, int],
    soft_radius: tuple[int, int] = (0, 0),
    soft_path: Optional[str | os.PathLike] = None,
) -> GroundTruth:
    """
    Load GT from a pair list or VPRB file.

    Without `soft_path`, GT_soft is the dilation of GT by `soft_radius`. With
    it, both matrices are taken as given and left unvalidated so that
    `validate_bundle` can report inconsistencies of external inputs.
    """
    gt = _read_mask(gt_path, shape)
    if soft_path is None:
        return GroundTruth(gt=gt, gt_soft=dilate(gt, soft_radius))
    gt_soft = _read_mask(soft_path, shape)
    logger.debug(f"Loaded external GT {gt.shape} and GT_soft {gt_soft.shape}")
    return GroundTruth.model_construct(gt=gt, gt_soft=gt_soft)


def mask_ground_truth(ground_truth: GroundTruth, eligible: np.ndarray) -> GroundTruth:
    """Drop GT and GT_soft cells outside `eligible` (e.g. a recent-frame exclusion band)."""
    return GroundTruth(
        gt=ground_truth.gt & eligible, gt_soft=ground_truth.gt_soft & eligible
    )
