import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from vprkit.models.arrays import FROZEN_ARRAY_CONFIG, as_matrix, frozen


class GroundTruth(BaseModel):
    """
    Hard ground truth `gt` and its dilated version `gt_soft`.

    Cells with ¬gt ∧ gt_soft are ignored during evaluation.
    Use `GroundTruth.model_construct` for unvalidated external inputs that
    `validate_bundle` should diagnose instead of rejecting.
    """

    model_config = ConfigDict(**FROZEN_ARRAY_CONFIG)

    gt: np.ndarray
    gt_soft: np.ndarray

    @field_validator("gt", "gt_soft", mode="before")
    @classmethod
    def _check_matrix(cls, value):
        return frozen(as_matrix(value, dtype=bool, name="ground truth"))

    @model_validator(mode="after")
    def _soft_contains_hard(self):
        if self.gt.shape != self.gt_soft.shape:
            raise ValueError(
                f"gt shape {self.gt.shape} differs from gt_soft shape {self.gt_soft.shape}"
            )
        if (self.gt & ~self.gt_soft).any():
            raise ValueError("gt must be contained in gt_soft")
        return self

    @property
    def shape(self) -> tuple[int, int]:
        return int(self.gt.shape[0]), int(self.gt.shape[1])

    @property
    def ignored(self) -> np.ndarray:
        return ~self.gt & self.gt_soft
