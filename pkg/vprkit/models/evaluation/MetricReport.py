from datetime import datetime
from typing import Any, Optional

from pydantic import BaseModel, Field

from vprkit.models.evaluation.ConfusionCounts import ConfusionCounts


class RecallAtK(BaseModel):
    """recall@K over the queries that have a ground-truth match."""

    k: int = Field(ge=1)
    recall: Optional[float] = Field(default=None, ge=0, le=1)
    evaluated: int = Field(ge=0)
    skipped: int = Field(ge=0)


class MetricReport(BaseModel):
    """Per-dataset evaluation record written as report.json."""

    dataset: str
    mode: str
    auprc: float = Field(ge=0, le=1)
    auprc_from_origin: float = Field(ge=0, le=1)
    r_at_p: dict[str, Optional[float]]
    recall_at_k: dict[str, Optional[float]]
    counts: Optional[ConfusionCounts] = None
    skipped: int = Field(default=0, ge=0)
    n_db: int = Field(ge=1)
    n_q: int = Field(ge=1)
    config: dict[str, Any] = Field(default_factory=dict)
    # Not covered by the determinism contract.
    created_at: Optional[datetime] = None


class MetricAggregate(BaseModel):
    """Mean, best and worst of one metric over several datasets."""

    metric: str
    mean: Optional[float] = None
    best: Optional[float] = None
    worst: Optional[float] = None
    count: int = Field(ge=0)
    undefined_count: int = Field(ge=0)
