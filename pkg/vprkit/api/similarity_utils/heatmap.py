import os

import numpy as np

from vprkit.api.core_utils.pgm import write_pgm
from vprkit.models.data import GrayImage, SimilarityMatrix


def heatmap_image(similarity: SimilarityMatrix) -> GrayImage:
    """Affine min-max map of the eligible cells to [0, 1]; excluded cells and constant S map to 0."""
    values = similarity.values
    eligible = similarity.eligible
    pixels = np.zeros(values.shape, dtype=np.float64)
    if eligible.any():
        low, high = values[eligible].min(), values[eligible].max()
        if high > low:
            pixels[eligible] = (values[eligible] - low) / (high - low)
    return GrayImage(pixels=np.clip(pixels, 0.0, 1.0))


def export_heatmap(similarity: SimilarityMatrix, path: str | os.PathLike) -> None:
    write_pgm(heatmap_image(similarity), path)
