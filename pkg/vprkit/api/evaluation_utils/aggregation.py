"""
Cross-dataset aggregation of metric reports: mean, best case, worst case.

Undefined values (e.g. R@100P when no threshold reaches full precision) are
left out of the statistics and counted separately.
"""

from typing import Optional, Sequence

import pandas as pd

from vprkit.core.exceptions import EvaluationError
from vprkit.models.evaluation import MetricAggregate, MetricReport


def flatten_report(report: MetricReport) -> dict[str, Optional[float]]:
    """One flat metric name -> value mapping, e.g. {"auprc": 0.8, "r_at_p.1.0": None}."""
    flat: dict[str, Optional[float]] = {
        "auprc": report.auprc,
        "auprc_from_origin": report.auprc_from_origin,
    }
    flat.update({f"r_at_p.{level}": value for level, value in report.r_at_p.items()})
    flat.update({f"recall_at_k.{k}": value for k, value in report.recall_at_k.items()})
    return flat


def aggregate_runs(reports: Sequence[MetricReport]) -> list[MetricAggregate]:
    if not reports:
        raise EvaluationError("nothing to aggregate")

    frame = pd.DataFrame([flatten_report(report) for report in reports], dtype="float64")
    aggregates = []
    for metric in frame.columns:
        column = frame[metric]
        defined = column.dropna()
        if defined.empty:
            aggregates.append(
                MetricAggregate(metric=metric, count=0, undefined_count=int(column.isna().sum()))
            )
            continue
        aggregates.append(
            MetricAggregate(
                metric=metric,
                mean=float(defined.mean()),
                best=float(defined.max()),
                worst=float(defined.min()),
                count=int(defined.size),
                undefined_count=int(column.isna().sum()),
            )
        )
    return aggregates


def aggregates_frame(aggregates: Sequence[MetricAggregate]) -> pd.DataFrame:
    return pd.DataFrame([aggregate.model_dump() for aggregate in aggregates])
