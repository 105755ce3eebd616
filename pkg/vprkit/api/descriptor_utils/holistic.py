"""
Holistic descriptors: patch-normalized downsampling.

The image is bilinearly resized to a grid of patch×patch blocks and every
block is z-scored on its own, which removes local brightness and contrast
offsets before comparison.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

import cv2
import numpy as np

from vprkit.core.config import get_settings
from vprkit.core.exceptions import SizeError
from vprkit.models.data import DescriptorMatrix, GrayImage

logger = logging.getLogger(__name__)

PATCH_STD_FLOOR = 1e-6


def patch_zscore(blocks: np.ndarray) -> np.ndarray:
    """Z-score along the last axis; std is floored so constant blocks map to zeros."""
    mean = blocks.mean(axis=-1, keepdims=True)
    std = np.maximum(blocks.std(axis=-1, keepdims=True), PATCH_STD_FLOOR)
    return (blocks - mean) / std


def holistic_patchnorm(image: GrayImage, grid_rows: int, grid_cols: int, patch: int) -> np.ndarray:
    if grid_rows < 1 or grid_cols < 1 or patch < 1:
        raise SizeError(f"grid {grid_rows}x{grid_cols} and patch {patch} must all be >= 1")
    if image.height < patch or image.width < patch:
        raise SizeError(f"image {image.height}x{image.width} is smaller than patch {patch}")

    height, width = grid_rows * patch, grid_cols * patch
    resized = cv2.resize(
        np.ascontiguousarray(image.pixels, dtype=np.float64),
        (width, height),
        interpolation=cv2.INTER_LINEAR,
    )
    # (grid_rows, patch, grid_cols, patch) -> one row per block, row-major over the grid
    blocks = (
        resized.reshape(grid_rows, patch, grid_cols, patch)
        .transpose(0, 2, 1, 3)
        .reshape(grid_rows * grid_cols, patch * patch)
    )
    return patch_zscore(blocks).reshape(-1)


def extract_holistic_batch(
    images: Sequence[GrayImage],
    grid_rows: int,
    grid_cols: int,
    patch: int,
    labels: Optional[Sequence[str]] = None,
    threads: Optional[int] = None,
) -> DescriptorMatrix:
    """Describe every image; rows keep the input order whatever the thread count."""
    if not images:
        raise SizeError("no images to describe")
    workers = threads or get_settings().threads
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(
            pool.map(lambda image: holistic_patchnorm(image, grid_rows, grid_cols, patch), images)
        )
    logger.debug(f"Extracted {len(rows)} holistic descriptors of dim {rows[0].shape[0]}")
    return DescriptorMatrix(values=np.vstack(rows), labels=labels)
