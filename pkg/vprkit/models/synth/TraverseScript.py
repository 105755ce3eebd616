from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, Field, model_validator


class Visit(BaseModel):
    """Drive through places [start, stop) at `step` places per frame."""

    kind: Literal["visit"] = "visit"
    start: int = Field(ge=0)
    stop: int = Field(ge=0)
    step: float = Field(default=1.0, gt=0)


class Stop(BaseModel):
    """Stand still at `place` for `duration` frames."""

    kind: Literal["stop"] = "stop"
    place: int = Field(ge=0)
    duration: int = Field(ge=1)


class Loop(BaseModel):
    """Revisit places [start, stop) one per frame."""

    kind: Literal["loop"] = "loop"
    start: int = Field(ge=0)
    stop: int = Field(ge=0)


class Skip(BaseModel):
    """Explore unmapped terrain for as many frames as places in [start, stop)."""

    kind: Literal["skip"] = "skip"
    start: int = Field(ge=0)
    stop: int = Field(ge=0)


TraverseEvent = Annotated[Union[Visit, Stop, Loop, Skip], Field(discriminator="kind")]


class TraverseScript(BaseModel):
    """
    Ordered events describing one traverse plus its appearance condition.

    Explicit `condition_bias` / `condition_scale` vectors win over the random
    `condition_bias_norm` / `condition_scale_range` draws. Empty means identity.
    """

    name: str = "traverse"
    events: list[TraverseEvent] = Field(default_factory=list)
    noise_sigma: float = Field(default=0.0, ge=0)
    condition_bias: list[float] = Field(default_factory=list)
    condition_scale: list[float] = Field(default_factory=list)
    condition_bias_norm: Optional[float] = Field(default=None, ge=0)
    condition_scale_range: Optional[tuple[float, float]] = None
    stream: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _check_condition(self):
        if any(s <= 0 for s in self.condition_scale):
            raise ValueError("condition_scale entries must be positive")
        if self.condition_scale_range is not None:
            low, high = self.condition_scale_range
            if not 0 < low <= high:
                raise ValueError("condition_scale_range must satisfy 0 < low <= high")
        return self

    def referenced_places(self) -> list[int]:
        places: list[int] = []
        for event in self.events:
            if isinstance(event, Stop):
                places.append(event.place)
            elif isinstance(event, (Visit, Loop)) and event.stop > event.start:
                places.append(event.stop - 1)
        return places
