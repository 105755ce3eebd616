import logging
from pathlib import Path
from typing import List, Optional

import typer
from rich.table import Table

from vprkit.api.cli_utils import (
    CliMode,
    cli_command,
    console,
    output_lock,
    parse_radius,
    parse_threshold,
    stage,
)
from vprkit.api.core_utils import read_ground_truth, read_similarity
from vprkit.api.evaluation_utils import (
    DEFAULT_K_LIST,
    DEFAULT_P_LEVELS,
    evaluate_similarity,
    write_pr_csv,
    write_pr_svg,
    write_report_json,
)
from vprkit.api.matching_utils import match_similarity
from vprkit.core.exceptions import DimensionError
from vprkit.models.evaluation import MetricReport

logger = logging.getLogger(__name__)


def print_report(report: MetricReport) -> None:
    table = Table(title=f"{report.dataset} ({report.mode})")
    table.add_column("metric")
    table.add_column("value", justify="right")

    def fmt(value: Optional[float]) -> str:
        return "undefined" if value is None else f"{value:.4f}"

    table.add_row("AUPRC", fmt(report.auprc))
    table.add_row("AUPRC (from origin)", fmt(report.auprc_from_origin))
    for level, value in report.r_at_p.items():
        table.add_row(f"R@{float(level) * 100:g}P", fmt(value))
    for k, value in report.recall_at_k.items():
        table.add_row(f"recall@{k}", fmt(value))
    if report.counts is not None:
        c = report.counts
        table.add_row("TP / FP / GTP", f"{c.tp} / {c.fp} / {c.gtp}")
    console.print(table)


@cli_command
def cmd_eval(
    similarity_file: Path = typer.Argument(..., help="Similarity matrix (.vprd), rows = DB, cols = Q"),
    gt: Path = typer.Option(..., "--gt", help="Ground truth: pair list or .vprb"),
    gt_soft: Optional[Path] = typer.Option(None, "--gt-soft", help="Soft ground truth: pair list or .vprb"),
    soft_radius: str = typer.Option("0", "--soft-radius", help="Dilation radius 'r' or 'r_rows,r_cols'"),
    mode: CliMode = typer.Option(CliMode.SINGLE_BEST, "--mode"),
    k: Optional[List[int]] = typer.Option(None, "--k", help="recall@K levels (repeatable)"),
    p: Optional[List[float]] = typer.Option(None, "--p", help="Precision levels for R@P (repeatable)"),
    threshold: Optional[str] = typer.Option(None, "--threshold", help="'auto' or a number, for the counts"),
    dataset: str = typer.Option("dataset", "--dataset", help="Dataset name in the report"),
    out: Path = typer.Option(Path("out"), "--out", help="Output directory"),
):
    """
    Evaluate an externally produced similarity matrix.

    Writes report.json, pr.csv and pr.svg; works on any S, so descriptors
    computed elsewhere can be compared with the same metrics.

    auprc covers only the recall range the curve reaches, so even a perfect
    matcher can score below 1. auprc_from_origin anchors the curve at
    recall 0, precision 1 and reaches 1 for perfect separation.
    """
    radius = parse_radius(soft_radius)
    theta_option = parse_threshold(threshold)
    match_mode = mode.to_match_mode()

    with output_lock(out) as out_dir:
        with stage("evaluate"):
            similarity = read_similarity(similarity_file)
            ground_truth = read_ground_truth(gt, similarity.shape, radius, gt_soft)
            for name, mask in (("GT", ground_truth.gt), ("GT_soft", ground_truth.gt_soft)):
                if mask.shape != similarity.shape:
                    raise DimensionError(f"{name} is {mask.shape}, S is {similarity.shape}")

            matches, _ = match_similarity(similarity, match_mode, theta_option)
            report, curve = evaluate_similarity(
                similarity,
                ground_truth,
                mode=match_mode,
                dataset=dataset,
                k_list=k or DEFAULT_K_LIST,
                p_levels=p or DEFAULT_P_LEVELS,
                matches=matches,
                config={
                    "similarity": str(similarity_file),
                    "gt": str(gt),
                    "gt_soft": None if gt_soft is None else str(gt_soft),
                    "soft_radius": list(radius),
                    "threshold": theta_option,
                },
            )
            write_report_json(report, out_dir / "report.json")
            write_pr_csv(curve, out_dir / "pr.csv")
            write_pr_svg(curve, out_dir / "pr.svg", title=f"{dataset} ({match_mode.value})")

    print_report(report)
