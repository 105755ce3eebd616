"""Seeded random projections for dimensionality reduction (Johnson-Lindenstrauss style)."""

import enum

import numpy as np

from vprkit.models.data import DescriptorMatrix


class ProjectionKind(str, enum.Enum):
    GAUSSIAN = "gaussian"
    SIGN = "sign"


def projection_matrix(d: int, m: int, kind: ProjectionKind | str, seed: int) -> np.ndarray:
    """
    m×d projection P, fixed by `seed`.

    gaussian: entries N(0, 1)/sqrt(m). sign: entries ±1/sqrt(m) from integer
    draws, so the sign matrix is bit-reproducible.
    """
    if m < 1 or d < 1:
        raise ValueError(f"projection needs m >= 1 and d >= 1, got m={m}, d={d}")
    kind = ProjectionKind(kind)
    rng = np.random.default_rng(seed)
    if kind is ProjectionKind.GAUSSIAN:
        return rng.standard_normal((m, d)) / np.sqrt(m)
    signs = rng.integers(0, 2, size=(m, d)) * 2 - 1
    return signs.astype(np.float64) / np.sqrt(m)


def random_projection(
    descriptors: DescriptorMatrix, m: int, kind: ProjectionKind | str = "gaussian", seed: int = 0
) -> DescriptorMatrix:
    projection = projection_matrix(descriptors.d, m, kind, seed)
    return descriptors.with_values(descriptors.values @ projection.T)
