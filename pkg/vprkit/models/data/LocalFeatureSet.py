from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from vprkit.models.arrays import FROZEN_ARRAY_CONFIG, frozen, require_finite


class LocalFeatureSet(BaseModel):
    """K local descriptors of one image plus the (x, y) pixel centre of each region."""

    model_config = ConfigDict(**FROZEN_ARRAY_CONFIG)

    vectors: np.ndarray
    coords: np.ndarray
    image_shape: Optional[tuple[int, int]] = None

    @field_validator("vectors", mode="before")
    @classmethod
    def _check_vectors(cls, value):
        vectors = np.array(value, dtype=np.float64, copy=True)
        if vectors.ndim != 2 or vectors.shape[1] < 1:
            raise ValueError(f"vectors must be K×D with D >= 1, got {vectors.shape}")
        require_finite(vectors, "local vectors")
        return frozen(vectors)

    @field_validator("coords", mode="before")
    @classmethod
    def _check_coords(cls, value):
        coords = np.array(value, dtype=np.float64, copy=True).reshape(-1, 2)
        require_finite(coords, "coords")
        return frozen(coords)

    @model_validator(mode="after")
    def _coords_consistent(self):
        if self.coords.shape[0] != self.vectors.shape[0]:
            raise ValueError("one coordinate pair is required per local vector")
        if self.image_shape is not None and self.k:
            height, width = self.image_shape
            xs, ys = self.coords[:, 0], self.coords[:, 1]
            if xs.min() < 0 or ys.min() < 0 or xs.max() > width or ys.max() > height:
                raise ValueError("coords fall outside the source image")
        return self

    @property
    def k(self) -> int:
        return int(self.vectors.shape[0])

    @property
    def d(self) -> int:
        return int(self.vectors.shape[1])
