from pydantic import BaseModel, Field, model_validator

from vprkit.models.data.MatchMatrix import MatchMode


class ConfusionCounts(BaseModel):
    """TP/FP/FN and ground-truth positives of one matching decision. TN is not reported."""

    tp: int = Field(ge=0)
    fp: int = Field(ge=0)
    fn: int = Field(ge=0)
    gtp: int = Field(ge=0)
    mode: MatchMode

    @model_validator(mode="after")
    def _fn_consistent(self):
        if self.fn != self.gtp - self.tp:
            raise ValueError("fn must equal gtp - tp")
        return self

    @property
    def precision(self) -> float:
        matched = self.tp + self.fp
        return 1.0 if matched == 0 else self.tp / matched

    @property
    def recall(self) -> float:
        return 0.0 if self.gtp == 0 else self.tp / self.gtp
