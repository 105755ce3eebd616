import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from vprkit.models.arrays import FROZEN_ARRAY_CONFIG, frozen


class TopKResult(BaseModel):
    """
    Retrieval result: row j holds the K database indices of query j, best first.

    K here is the retrieval depth, unrelated to the number of local features.
    """

    model_config = ConfigDict(**FROZEN_ARRAY_CONFIG)

    indices: np.ndarray
    similarities: np.ndarray

    @field_validator("indices", mode="before")
    @classmethod
    def _check_indices(cls, value):
        return frozen(np.array(value, dtype=np.int64, copy=True))

    @field_validator("similarities", mode="before")
    @classmethod
    def _check_similarities(cls, value):
        return frozen(np.array(value, dtype=np.float64, copy=True))

    @property
    def k(self) -> int:
        return int(self.indices.shape[1])

    @property
    def n_queries(self) -> int:
        return int(self.indices.shape[0])
