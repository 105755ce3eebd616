"""Validation helpers for numpy-backed pydantic models."""

import numpy as np

FROZEN_ARRAY_CONFIG = dict(arbitrary_types_allowed=True, frozen=True)


def frozen(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


def as_matrix(value, dtype=np.float64, name: str = "matrix") -> np.ndarray:
    """Copy `value` into a 2-D array of `dtype`; raises ValueError otherwise."""
    array = np.array(value, dtype=dtype, copy=True)
    if array.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {array.shape}")
    return array


def require_no_nan(array: np.ndarray, name: str) -> None:
    if np.isnan(array).any():
        raise ValueError(f"{name} contains NaN")


def require_finite(array: np.ndarray, name: str) -> None:
    if not np.isfinite(array).all():
        raise ValueError(f"{name} contains NaN or Inf")
