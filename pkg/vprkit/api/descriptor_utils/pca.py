"""
Principal component analysis.

The basis comes from OpenCV's PCA (eigenvectors of the population
covariance, largest eigenvalue first). Each axis is then oriented so that
its largest-magnitude entry is positive, which makes the basis unique up to
ties in magnitude.
"""

import logging

import cv2
import numpy as np

from vprkit.core.exceptions import DimensionError, SizeError
from vprkit.models.data import DescriptorMatrix
from vprkit.models.descriptors import PcaBasis

logger = logging.getLogger(__name__)


def _fix_signs(components: np.ndarray) -> np.ndarray:
    pivots = np.argmax(np.abs(components), axis=1)
    signs = np.sign(components[np.arange(components.shape[0]), pivots])
    signs[signs == 0] = 1.0
    return components * signs[:, None]


def pca_fit(descriptors: DescriptorMatrix, m: int) -> PcaBasis:
    n, d = descriptors.n, descriptors.d
    if m < 1 or m > min(n - 1, d):
        raise SizeError(f"PCA needs 1 <= m <= min(n-1, d) = {min(n - 1, d)}, got m={m}")

    values = np.ascontiguousarray(descriptors.values, dtype=np.float64)
    mean, eigenvectors, _ = cv2.PCACompute2(values, np.empty(0), maxComponents=m)
    mean = mean.reshape(-1)
    components = _fix_signs(eigenvectors[:m])
    # Population variances, the same convention as total_variance
    explained = ((values - mean) @ components.T).var(axis=0)
    basis = PcaBasis(
        mean=mean,
        components=components,
        explained_variance=explained,
        total_variance=float(values.var(axis=0).sum()),
    )
    logger.debug(
        f"PCA {d} -> {m}: {basis.explained_variance_ratio.sum():.4f} of the variance kept"
    )
    return basis


def pca_apply(descriptors: DescriptorMatrix, basis: PcaBasis) -> DescriptorMatrix:
    if descriptors.d != basis.mean.shape[0]:
        raise DimensionError(f"descriptors have d={descriptors.d}, PCA basis d={basis.mean.shape[0]}")
    return descriptors.with_values((descriptors.values - basis.mean) @ basis.components.T)


def pca_reconstruct(projected: DescriptorMatrix, basis: PcaBasis) -> DescriptorMatrix:
    """Map projected descriptors back into the original space."""
    if projected.d != basis.m:
        raise DimensionError(f"projected descriptors have d={projected.d}, basis m={basis.m}")
    return projected.with_values(projected.values @ basis.components + basis.mean)
