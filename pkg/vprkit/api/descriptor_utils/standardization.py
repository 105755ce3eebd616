"""
Descriptor standardization.

Each group of descriptors (one appearance condition, or one k-means
cluster) is shifted to zero mean and scaled to unit standard deviation per
dimension, which removes the condition-specific offset between database and
query descriptors.
"""

import logging
from collections import Counter
from typing import Sequence

import numpy as np

from vprkit.api.descriptor_utils.kmeans import assign_to_codebook, kmeans_fit
from vprkit.core.exceptions import DimensionError, SizeError, UnknownGroupError
from vprkit.models.data import DescriptorMatrix
from vprkit.models.descriptors import GroupStats, StandardizationStats

logger = logging.getLogger(__name__)

STD_FLOOR = 1e-9
GLOBAL_GROUP = "__global__"


def _group_stats(values: np.ndarray) -> GroupStats:
    return GroupStats(
        mean=values.mean(axis=0),
        std=np.maximum(values.std(axis=0), STD_FLOOR),
        count=values.shape[0],
    )


def _labels_for(descriptors: DescriptorMatrix, group_labels) -> list[str]:
    labels = [str(label) for label in group_labels]
    if len(labels) != descriptors.n:
        raise SizeError(f"{len(labels)} group labels for {descriptors.n} descriptors")
    return labels


def standardize_fit(descriptors: DescriptorMatrix, group_labels: Sequence) -> StandardizationStats:
    labels = _labels_for(descriptors, group_labels)
    sizes = Counter(labels)
    small = sorted(label for label, size in sizes.items() if size < 2)
    if small:
        raise SizeError(f"standardization groups need >= 2 members; too small: {small}")

    label_array = np.asarray(labels)
    groups = {
        label: _group_stats(descriptors.values[label_array == label]) for label in sorted(sizes)
    }
    return StandardizationStats(groups=groups)


def standardize_apply(
    descriptors: DescriptorMatrix, stats: StandardizationStats, group_labels: Sequence
) -> DescriptorMatrix:
    labels = _labels_for(descriptors, group_labels)
    unseen = sorted(set(labels) - set(stats.groups))
    if unseen:
        raise UnknownGroupError(f"no standardization statistics for groups {unseen}")
    if descriptors.n and descriptors.d != stats.d:
        raise DimensionError(f"descriptors have d={descriptors.d}, statistics d={stats.d}")

    out = np.empty_like(descriptors.values)
    label_array = np.asarray(labels)
    for label in set(labels):
        rows = label_array == label
        group = stats.groups[label]
        out[rows] = (descriptors.values[rows] - group.mean) / group.std
    return descriptors.with_values(out)


def standardize(descriptors: DescriptorMatrix, group_labels: Sequence) -> DescriptorMatrix:
    """Fit and apply on the same descriptors."""
    return standardize_apply(descriptors, standardize_fit(descriptors, group_labels), group_labels)


def cluster_standardize(
    descriptors: DescriptorMatrix, k: int, iters: int = 20, seed: int = 0
) -> DescriptorMatrix:
    """
    Standardize per k-means cluster instead of per known condition.

    Clusters with fewer than 2 members are standardized with the statistics
    of the whole set.
    """
    if descriptors.n < 2 * k:
        raise SizeError(f"cluster standardization needs n >= 2k, got n={descriptors.n}, k={k}")
    codebook = kmeans_fit(descriptors.values, k, iters, seed)
    assignments = assign_to_codebook(descriptors.values, codebook)

    sizes = np.bincount(assignments, minlength=k)
    labels = [str(c) if sizes[c] >= 2 else GLOBAL_GROUP for c in assignments]
    groups = {str(c): _group_stats(descriptors.values[assignments == c]) for c in np.flatnonzero(sizes >= 2)}
    if GLOBAL_GROUP in labels:
        logger.warning(
            f"{int((sizes < 2).sum())} cluster(s) with < 2 members fall back to global statistics"
        )
        groups[GLOBAL_GROUP] = _group_stats(descriptors.values)
    return standardize_apply(descriptors, StandardizationStats(groups=groups), labels)
