import numpy as np
from pydantic import BaseModel, Field, model_validator


class SeqParams(BaseModel):
    """Sequence length and slope grid for similarity-based sequence refinement."""

    length: int = Field(default=5, ge=1)
    v_min: float = Field(default=0.8, gt=0)
    v_max: float = Field(default=1.2, gt=0)
    v_steps: int = Field(default=5, ge=1)

    @model_validator(mode="after")
    def _check(self):
        if self.length % 2 == 0:
            raise ValueError("sequence length must be odd")
        if self.v_min > self.v_max:
            raise ValueError("v_min must not exceed v_max")
        return self

    def velocities(self) -> np.ndarray:
        return np.linspace(self.v_min, self.v_max, self.v_steps)
