import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from vprkit.models.arrays import FROZEN_ARRAY_CONFIG, frozen, require_finite


class GroupStats(BaseModel):
    """Per-dimension mean and (floored) population std of one group."""

    model_config = ConfigDict(**FROZEN_ARRAY_CONFIG)

    mean: np.ndarray
    std: np.ndarray
    count: int

    @field_validator("mean", "std", mode="before")
    @classmethod
    def _check_vector(cls, value):
        vector = np.array(value, dtype=np.float64, copy=True).reshape(-1)
        require_finite(vector, "group statistics")
        return frozen(vector)

    @model_validator(mode="after")
    def _positive_std(self):
        if self.mean.shape != self.std.shape:
            raise ValueError("mean and std must have the same dimension")
        if (self.std <= 0).any():
            raise ValueError("std must be positive after flooring")
        return self


class StandardizationStats(BaseModel):
    """Statistics keyed by group (condition label or cluster id)."""

    model_config = ConfigDict(**FROZEN_ARRAY_CONFIG)

    groups: dict[str, GroupStats]

    @property
    def d(self) -> int:
        return int(next(iter(self.groups.values())).mean.shape[0])
