import enum

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from vprkit.models.arrays import FROZEN_ARRAY_CONFIG, as_matrix, frozen, require_no_nan

# Marker for cells excluded from matching (re-ranking, exclusion bands).
EXCLUDED = -np.inf


class MetricTag(enum.Enum):
    COSINE = "cosine"
    NEG_EUCLIDEAN = "neg_euclidean"
    REFINED = "refined"


class SimilarityMatrix(BaseModel):
    """
    |DB|×|Q| pairwise similarities (Q×Q in single-session runs).

    Rows are database images, columns are queries. Cells holding `EXCLUDED`
    are never matched and never counted during evaluation.
    """

    model_config = ConfigDict(**FROZEN_ARRAY_CONFIG)

    values: np.ndarray
    metric_tag: MetricTag

    @field_validator("values", mode="before")
    @classmethod
    def _check_values(cls, value):
        values = as_matrix(value, name="similarity values")
        if values.shape[0] < 1 or values.shape[1] < 1:
            raise ValueError("similarity matrix must have at least one row and column")
        require_no_nan(values, "similarity values")
        if np.isposinf(values).any():
            raise ValueError("similarity values contain +inf")
        return frozen(values)

    @model_validator(mode="after")
    def _cosine_range(self):
        if self.metric_tag is MetricTag.COSINE:
            finite = self.values[np.isfinite(self.values)]
            if finite.size and (finite.min() < -1.0 or finite.max() > 1.0):
                raise ValueError("cosine similarities must lie in [-1, 1]")
        return self

    @property
    def shape(self) -> tuple[int, int]:
        return int(self.values.shape[0]), int(self.values.shape[1])

    @property
    def eligible(self) -> np.ndarray:
        """Cells that are not excluded."""
        return np.isfinite(self.values)
