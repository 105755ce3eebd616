"""
Metric reports and their files: report.json, pr.csv (theta,precision,recall)
and an SVG line plot of the PR curve.
"""

import logging
import os
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Optional, Sequence

import pandas as pd
from jinja2 import Environment, FileSystemLoader

from vprkit.api.evaluation_utils.counts import confusion_counts
from vprkit.api.evaluation_utils.curves import auprc, pr_curve, recall_at_precision
from vprkit.api.evaluation_utils.retrieval import recall_at_k
from vprkit.models.data import GroundTruth, MatchMatrix, MatchMode, SimilarityMatrix
from vprkit.models.evaluation import MetricReport, PRCurve

logger = logging.getLogger(__name__)

TEMPLATE_DIR = os.path.dirname(os.path.abspath(__file__))
DEFAULT_K_LIST = (1, 5, 10)
DEFAULT_P_LEVELS = (1.0, 0.99, 0.95)

SVG_WIDTH, SVG_HEIGHT = 480, 360
SVG_MARGIN = {"left": 56, "right": 20, "top": 32, "bottom": 44}


def evaluate_similarity(
    similarity: SimilarityMatrix,
    ground_truth: GroundTruth,
    mode: MatchMode | str = MatchMode.MULTI_MATCH,
    dataset: str = "dataset",
    k_list: Sequence[int] = DEFAULT_K_LIST,
    p_levels: Sequence[float] = DEFAULT_P_LEVELS,
    matches: Optional[MatchMatrix] = None,
    config: Optional[dict[str, Any]] = None,
    skip_unmatched: bool = True,
) -> tuple[MetricReport, PRCurve]:
    """All metrics of one dataset: curve-based, recall@K and (given M) the confusion counts."""
    mode = MatchMode(mode)
    curve = pr_curve(similarity, ground_truth, mode)

    recalls = [recall_at_k(similarity, ground_truth, k, skip_unmatched) for k in k_list]
    counts = confusion_counts(matches, ground_truth, mode) if matches is not None else None

    report = MetricReport(
        dataset=dataset,
        mode=mode.value,
        auprc=auprc(curve),
        auprc_from_origin=auprc(curve, from_origin=True),
        r_at_p={str(float(p)): recall_at_precision(curve, p) for p in p_levels},
        recall_at_k={str(r.k): r.recall for r in recalls},
        counts=counts,
        skipped=recalls[0].skipped if recalls else 0,
        n_db=similarity.shape[0],
        n_q=similarity.shape[1],
        config=config or {},
        created_at=datetime.now(timezone.utc),
    )
    logger.info(f"{dataset}: AUPRC {report.auprc:.4f} ({mode.value})")
    return report, curve


def write_report_json(report: MetricReport, path: str | os.PathLike) -> None:
    Path(path).write_text(report.model_dump_json(indent=2) + "\n", encoding="utf-8")


def read_report_json(path: str | os.PathLike) -> MetricReport:
    return MetricReport.model_validate_json(Path(path).read_text(encoding="utf-8"))


def write_pr_csv(curve: PRCurve, path: str | os.PathLike) -> None:
    frame = pd.DataFrame(
        {"theta": curve.thetas, "precision": curve.precision, "recall": curve.recall}
    )
    frame.to_csv(path, index=False, float_format="%.17g", lineterminator="\n")


def _svg_context(curve: PRCurve, title: str, area: float) -> dict:
    left, top = SVG_MARGIN["left"], SVG_MARGIN["top"]
    right, bottom = SVG_WIDTH - SVG_MARGIN["right"], SVG_HEIGHT - SVG_MARGIN["bottom"]
    span_x, span_y = right - left, bottom - top

    points = " ".join(
        f"{left + r * span_x:.2f},{bottom - p * span_y:.2f}"
        for r, p in zip(curve.recall, curve.precision)
    )
    ticks = [
        {"x": f"{left + t * span_x:.2f}", "y": f"{bottom - t * span_y:.2f}", "label": f"{t:.1f}"}
        for t in (0.0, 0.2, 0.4, 0.6, 0.8, 1.0)
    ]
    return {
        "width": SVG_WIDTH,
        "height": SVG_HEIGHT,
        "left": left,
        "right": right,
        "top": top,
        "bottom": bottom,
        "ticks": ticks,
        "points": points,
        "title": title,
        "area": area,
    }


def write_pr_svg(curve: PRCurve, path: str | os.PathLike, title: str = "Precision-recall") -> None:
    env = Environment(
        loader=FileSystemLoader(TEMPLATE_DIR),
        autoescape=True,
        trim_blocks=True,
        lstrip_blocks=True,
    )
    svg = env.get_template("pr_curve.svg.j2").render(**_svg_context(curve, title, auprc(curve)))
    Path(path).write_text(svg, encoding="utf-8")
