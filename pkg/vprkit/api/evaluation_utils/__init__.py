"""
Evaluation: confusion counts, PR curves, AUPRC, R@P, recall@K, aggregation
and report files.
"""

from vprkit.api.evaluation_utils.counts import (
    confusion_counts,
    ground_truth_positives,
    precision_recall_point,
)
from vprkit.api.evaluation_utils.curves import (
    pr_curve,
    auprc,
    recall_at_precision,
    threshold_grid,
)
from vprkit.api.evaluation_utils.retrieval import recall_at_k
from vprkit.api.evaluation_utils.aggregation import (
    flatten_report,
    aggregate_runs,
    aggregates_frame,
)
from vprkit.api.evaluation_utils.report import (
    DEFAULT_K_LIST,
    DEFAULT_P_LEVELS,
    evaluate_similarity,
    write_report_json,
    read_report_json,
    write_pr_csv,
    write_pr_svg,
)

__all__ = [
    # Counting
    "confusion_counts",
    "ground_truth_positives",
    "precision_recall_point",
    # Curves
    "pr_curve",
    "auprc",
    "recall_at_precision",
    "threshold_grid",
    "recall_at_k",
    # Aggregation
    "flatten_report",
    "aggregate_runs",
    "aggregates_frame",
    # Reports
    "DEFAULT_K_LIST",
    "DEFAULT_P_LEVELS",
    "evaluate_similarity",
    "write_report_json",
    "read_report_json",
    "write_pr_csv",
    "write_pr_svg",
]
