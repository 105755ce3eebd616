import enum

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from vprkit.models.arrays import FROZEN_ARRAY_CONFIG, as_matrix, frozen


class MatchMode(enum.Enum):
    SINGLE_BEST = "single_best"
    MULTI_MATCH = "multi_match"


class MatchMatrix(BaseModel):
    """Boolean matching decisions M, same shape as the S they came from."""

    model_config = ConfigDict(**FROZEN_ARRAY_CONFIG)

    matches: np.ndarray
    mode: MatchMode

    @field_validator("matches", mode="before")
    @classmethod
    def _check_matches(cls, value):
        return frozen(as_matrix(value, dtype=bool, name="matches"))

    @model_validator(mode="after")
    def _single_best_columns(self):
        if self.mode is MatchMode.SINGLE_BEST and (self.matches.sum(axis=0) > 1).any():
            raise ValueError("single-best matches allow at most one match per column")
        return self

    @property
    def shape(self) -> tuple[int, int]:
        return int(self.matches.shape[0]), int(self.matches.shape[1])

    def pairs(self) -> list[tuple[int, int]]:
        return [(int(i), int(j)) for i, j in np.argwhere(self.matches)]
