from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from vprkit.models.arrays import FROZEN_ARRAY_CONFIG, as_matrix, frozen, require_finite


class DescriptorMatrix(BaseModel):
    """
    N×D matrix of holistic descriptors, one row per image.

    `labels` optionally tags each row with its condition (season, session, ...);
    standardization groups rows by it.
    """

    model_config = ConfigDict(**FROZEN_ARRAY_CONFIG)

    values: np.ndarray
    labels: Optional[tuple[str, ...]] = None

    @field_validator("values", mode="before")
    @classmethod
    def _check_values(cls, value):
        values = as_matrix(value, name="descriptor values")
        if values.shape[1] < 1:
            raise ValueError("descriptor dimension must be >= 1")
        require_finite(values, "descriptor values")
        return frozen(values)

    @field_validator("labels", mode="before")
    @classmethod
    def _check_labels(cls, value):
        if value is None:
            return None
        return tuple(str(label) for label in value)

    @model_validator(mode="after")
    def _labels_match_rows(self):
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError(
                f"labels has {len(self.labels)} entries for {self.n} descriptors"
            )
        return self

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    @property
    def d(self) -> int:
        return int(self.values.shape[1])

    def with_values(self, values: np.ndarray) -> "DescriptorMatrix":
        """Same rows and labels, new values (dimension may change)."""
        return DescriptorMatrix(values=values, labels=self.labels)

    def group_labels(self, default: str) -> tuple[str, ...]:
        """Row labels, or `default` for every row when unlabeled."""
        if self.labels is None:
            return (default,) * self.n
        return self.labels
