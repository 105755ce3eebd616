"""
k-means codebooks.

Training runs OpenCV's k-means (k-means++ seeding, Lloyd iterations, empty
clusters refilled with the farthest point of the largest cluster) under a
fixed OpenCV RNG seed. Assignment is done here in float64 so that ties
resolve to the lowest centroid index on every platform.
"""

import logging

import cv2
import numpy as np

from vprkit.core.exceptions import DimensionError, SizeError
from vprkit.models.descriptors import Codebook

logger = logging.getLogger(__name__)

# OpenCV runs at least two iterations whatever maxCount says; the upper bound is ours.
MIN_ITERATIONS = 2
MAX_ITERATIONS = 100
ASSIGN_CHUNK = 4096


def kmeans_fit(samples: np.ndarray, k: int, iters: int = 20, seed: int = 0) -> Codebook:
    """
    Train a k-centroid codebook. `iters` must be at least 2, since OpenCV would
    silently run two iterations anyway; counts above 100 are capped.
    """
    samples = np.asarray(samples, dtype=np.float64)
    if samples.ndim != 2:
        raise SizeError(f"samples must be 2-D, got shape {samples.shape}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if iters < MIN_ITERATIONS:
        raise ValueError(f"k-means needs iters >= {MIN_ITERATIONS}, got {iters}")
    if samples.shape[0] < k:
        raise SizeError(f"k-means needs at least k={k} samples, got {samples.shape[0]}")

    criteria = (cv2.TERM_CRITERIA_MAX_ITER, min(iters, MAX_ITERATIONS), 0.0)
    # cv2.setRNGSeed only takes 32-bit ints; the seed is reduced to fit.
    cv2.setRNGSeed(int(seed) % (2**31))
    _, _, centroids = cv2.kmeans(
        samples.astype(np.float32), k, None, criteria, 1, cv2.KMEANS_PP_CENTERS
    )
    logger.debug(f"Trained codebook with k={k} on {samples.shape[0]} samples")
    return Codebook(centroids=centroids.astype(np.float64))


def squared_distances(vectors: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    diff = vectors[:, None, :] - centroids[None, :, :]
    return np.einsum("nkd,nkd->nk", diff, diff)


def assign_to_codebook(vectors: np.ndarray, codebook: Codebook) -> np.ndarray:
    """Index of the nearest centroid per row (squared Euclidean, ties -> lowest index)."""
    vectors = np.asarray(vectors, dtype=np.float64)
    if vectors.ndim != 2 or (vectors.shape[0] and vectors.shape[1] != codebook.d):
        raise DimensionError(
            f"vectors of shape {vectors.shape} do not match codebook dimension {codebook.d}"
        )
    assignments = np.empty(vectors.shape[0], dtype=np.int64)
    for start in range(0, vectors.shape[0], ASSIGN_CHUNK):
        chunk = vectors[start : start + ASSIGN_CHUNK]
        assignments[start : start + len(chunk)] = np.argmin(
            squared_distances(chunk, codebook.centroids), axis=1
        )
    return assignments
