import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from vprkit.models.arrays import FROZEN_ARRAY_CONFIG, as_matrix, frozen, require_finite


class Codebook(BaseModel):
    """k visual words (k-means centroids) of dimension d."""

    model_config = ConfigDict(**FROZEN_ARRAY_CONFIG)

    centroids: np.ndarray

    @field_validator("centroids", mode="before")
    @classmethod
    def _check_centroids(cls, value):
        centroids = as_matrix(value, name="centroids")
        if centroids.shape[0] < 1 or centroids.shape[1] < 1:
            raise ValueError("codebook needs at least one centroid of dimension >= 1")
        require_finite(centroids, "centroids")
        return frozen(centroids)

    @property
    def k(self) -> int:
        return int(self.centroids.shape[0])

    @property
    def d(self) -> int:
        return int(self.centroids.shape[1])
