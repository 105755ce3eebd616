import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from vprkit.models.arrays import FROZEN_ARRAY_CONFIG, as_matrix, frozen
from vprkit.models.synth.WorldConfig import WorldConfig


class World(BaseModel):
    """Generated world: one latent appearance row per place."""

    model_config = ConfigDict(**FROZEN_ARRAY_CONFIG)

    config: WorldConfig
    latents: np.ndarray
    aliased: tuple[tuple[int, int], ...] = ()

    @field_validator("latents", mode="before")
    @classmethod
    def _check_latents(cls, value):
        return frozen(as_matrix(value, name="latents"))
