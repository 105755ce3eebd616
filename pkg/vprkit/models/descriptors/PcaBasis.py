import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from vprkit.models.arrays import FROZEN_ARRAY_CONFIG, frozen


class PcaBasis(BaseModel):
    """Top-m principal axes (rows of `components`) of a centred descriptor set."""

    model_config = ConfigDict(**FROZEN_ARRAY_CONFIG)

    mean: np.ndarray
    components: np.ndarray
    explained_variance: np.ndarray
    total_variance: float

    @field_validator("mean", "components", "explained_variance", mode="before")
    @classmethod
    def _freeze(cls, value):
        return frozen(np.array(value, dtype=np.float64, copy=True))

    @property
    def m(self) -> int:
        return int(self.components.shape[0])

    @property
    def explained_variance_ratio(self) -> np.ndarray:
        if self.total_variance <= 0:
            return np.zeros_like(self.explained_variance)
        return self.explained_variance / self.total_variance
