"""
Local descriptors sampled on a regular grid.

Each patch×patch window is z-scored and flattened. When `d_out` is smaller
than patch², a fixed seeded sign projection shortens the vectors.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

import numpy as np

from vprkit.api.descriptor_utils.holistic import patch_zscore
from vprkit.api.descriptor_utils.projection import projection_matrix
from vprkit.core.config import get_settings
from vprkit.core.exceptions import SizeError
from vprkit.models.data import GrayImage, LocalFeatureSet

logger = logging.getLogger(__name__)

LOCAL_PROJECTION_SEED = 0


def extract_local_grid(
    image: GrayImage,
    stride: int,
    patch: int,
    d_out: Optional[int] = None,
    seed: int = LOCAL_PROJECTION_SEED,
) -> LocalFeatureSet:
    if stride < 1 or patch < 1:
        raise SizeError(f"stride and patch must be >= 1, got stride={stride}, patch={patch}")
    if patch > image.height or patch > image.width:
        raise SizeError(f"patch {patch} exceeds image {image.height}x{image.width}")

    ys = np.arange(0, image.height - patch + 1, stride)
    xs = np.arange(0, image.width - patch + 1, stride)
    # Top-left corners, y outer so features run row by row
    windows = np.lib.stride_tricks.sliding_window_view(image.pixels, (patch, patch))
    vectors = windows[ys][:, xs].reshape(len(ys) * len(xs), patch * patch)
    vectors = patch_zscore(vectors)

    full_dim = patch * patch
    if d_out is not None and d_out < full_dim:
        vectors = vectors @ projection_matrix(full_dim, d_out, "sign", seed).T

    grid_y, grid_x = np.meshgrid(ys, xs, indexing="ij")
    coords = np.column_stack([grid_x.reshape(-1), grid_y.reshape(-1)]) + patch / 2
    return LocalFeatureSet(
        vectors=vectors, coords=coords, image_shape=(image.height, image.width)
    )


def extract_local_batch(
    images: Sequence[GrayImage],
    stride: int,
    patch: int,
    d_out: Optional[int] = None,
    threads: Optional[int] = None,
) -> list[LocalFeatureSet]:
    workers = threads or get_settings().threads
    with ThreadPoolExecutor(max_workers=workers) as pool:
        features = list(pool.map(lambda image: extract_local_grid(image, stride, patch, d_out), images))
    logger.debug(f"Extracted local features for {len(features)} images")
    return features
