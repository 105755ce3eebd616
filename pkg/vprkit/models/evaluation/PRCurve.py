import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from vprkit.models.arrays import FROZEN_ARRAY_CONFIG, frozen
from vprkit.models.data.MatchMatrix import MatchMode


class PRCurve(BaseModel):
    """Precision and recall per threshold, thresholds in descending order."""

    model_config = ConfigDict(**FROZEN_ARRAY_CONFIG)

    thetas: np.ndarray
    precision: np.ndarray
    recall: np.ndarray
    mode: MatchMode = MatchMode.MULTI_MATCH

    @field_validator("thetas", "precision", "recall", mode="before")
    @classmethod
    def _as_vector(cls, value):
        return frozen(np.array(value, dtype=np.float64, copy=True).reshape(-1))

    @model_validator(mode="after")
    def _check(self):
        n = self.thetas.shape[0]
        if self.precision.shape[0] != n or self.recall.shape[0] != n:
            raise ValueError("thetas, precision and recall must have equal length")
        for name, values in (("precision", self.precision), ("recall", self.recall)):
            if n and (values.min() < 0 or values.max() > 1):
                raise ValueError(f"{name} must lie in [0, 1]")
        return self

    def __len__(self) -> int:
        return int(self.thetas.shape[0])
