from pydantic import BaseModel, Field, model_validator


class WorldConfig(BaseModel):
    """Parameters of a synthetic world of places with unit-norm latent appearances."""

    n_places: int = Field(ge=2)
    latent_dim: int = Field(default=64, ge=2)
    aliasing_pairs: int = Field(default=0, ge=0)
    seed: int = Field(default=0, ge=0, lt=2**64)

    @model_validator(mode="after")
    def _aliasing_fits(self):
        if self.aliasing_pairs > self.n_places // 2:
            raise ValueError("aliasing_pairs must be <= n_places / 2")
        return self
