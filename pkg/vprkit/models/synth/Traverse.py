import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from vprkit.models.arrays import FROZEN_ARRAY_CONFIG, frozen
from vprkit.models.data.DescriptorMatrix import DescriptorMatrix

UNMAPPED = -1


class Traverse(BaseModel):
    """Frame descriptors of one traverse and the place each frame shows (-1 = unmapped)."""

    model_config = ConfigDict(**FROZEN_ARRAY_CONFIG)

    descriptors: DescriptorMatrix
    place_ids: np.ndarray

    @field_validator("place_ids", mode="before")
    @classmethod
    def _check_ids(cls, value):
        ids = np.array(value, dtype=np.int64, copy=True).reshape(-1)
        if (ids < UNMAPPED).any():
            raise ValueError("place ids must be >= -1")
        return frozen(ids)

    @model_validator(mode="after")
    def _lengths_match(self):
        if self.place_ids.shape[0] != self.descriptors.n:
            raise ValueError("one place id is required per frame")
        return self

    def __len__(self) -> int:
        return int(self.place_ids.shape[0])
