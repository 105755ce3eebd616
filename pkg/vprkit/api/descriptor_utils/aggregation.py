"""Local feature aggregation into one holistic vector: Bag of Visual Words and VLAD."""

import numpy as np

from vprkit.api.descriptor_utils.kmeans import assign_to_codebook
from vprkit.core.exceptions import DimensionError
from vprkit.models.data import LocalFeatureSet
from vprkit.models.descriptors import Codebook


def l2_normalize(vector: np.ndarray) -> np.ndarray:
    norm = np.linalg.norm(vector)
    return vector / norm if norm > 0 else vector


def _check_dims(features: LocalFeatureSet, codebook: Codebook) -> None:
    if features.d != codebook.d:
        raise DimensionError(f"features have d={features.d}, codebook d={codebook.d}")


def bovw_histogram(features: LocalFeatureSet, codebook: Codebook) -> np.ndarray:
    """Raw visual-word counts; they sum to the number of features."""
    _check_dims(features, codebook)
    assignments = assign_to_codebook(features.vectors, codebook)
    return np.bincount(assignments, minlength=codebook.k).astype(np.float64)


def aggregate_bovw(features: LocalFeatureSet, codebook: Codebook) -> np.ndarray:
    return l2_normalize(bovw_histogram(features, codebook))


def aggregate_vlad(features: LocalFeatureSet, codebook: Codebook) -> np.ndarray:
    """
    Residual sums per visual word, signed-square-rooted and L2-normalized.

    Output has k·d entries, block c holding the residuals of features assigned to centroid c.
    """
    _check_dims(features, codebook)
    residuals = np.zeros((codebook.k, codebook.d), dtype=np.float64)
    if features.k:
        assignments = assign_to_codebook(features.vectors, codebook)
        np.add.at(residuals, assignments, features.vectors - codebook.centroids[assignments])
    vlad = np.sign(residuals) * np.sqrt(np.abs(residuals))
    return l2_normalize(vlad.reshape(-1))
