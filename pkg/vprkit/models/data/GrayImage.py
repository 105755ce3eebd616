import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from vprkit.models.arrays import FROZEN_ARRAY_CONFIG, as_matrix, frozen, require_finite


class GrayImage(BaseModel):
    """H×W intensity raster with values in [0, 1], row-major."""

    model_config = ConfigDict(**FROZEN_ARRAY_CONFIG)

    pixels: np.ndarray

    @field_validator("pixels", mode="before")
    @classmethod
    def _check_pixels(cls, value):
        pixels = as_matrix(value, name="pixels")
        if pixels.shape[0] < 1 or pixels.shape[1] < 1:
            raise ValueError("image must be at least 1x1")
        require_finite(pixels, "pixels")
        if pixels.min() < 0.0 or pixels.max() > 1.0:
            raise ValueError("pixel intensities must lie in [0, 1]")
        return frozen(pixels)

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def data(self) -> np.ndarray:
        """Flattened row-major intensities."""
        return self.pixels.reshape(-1)
