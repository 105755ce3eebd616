import logging
from pathlib import Path
from typing import List

import typer
from rich.table import Table

from vprkit.api.cli_utils import cli_command, console, stage
from vprkit.api.evaluation_utils import aggregate_runs, aggregates_frame, read_report_json

logger = logging.getLogger(__name__)


@cli_command
def cmd_aggregate(
    reports: List[Path] = typer.Argument(..., help="report.json files of individual runs"),
    out: Path = typer.Option(..., "--out", help="Output CSV"),
):
    """Mean, best and worst of every metric across several evaluation reports."""
    with stage("aggregate"):
        aggregates = aggregate_runs([read_report_json(path) for path in reports])
        out.parent.mkdir(parents=True, exist_ok=True)
        aggregates_frame(aggregates).to_csv(out, index=False, float_format="%.17g", lineterminator="\n")

    table = Table(title=f"{len(reports)} runs")
    for column in ("metric", "mean", "best", "worst", "undefined"):
        table.add_column(column, justify="left" if column == "metric" else "right")
    for aggregate in aggregates:
        cells = [aggregate.mean, aggregate.best, aggregate.worst]
        table.add_row(
            aggregate.metric,
            *("-" if v is None else f"{v:.4f}" for v in cells),
            str(aggregate.undefined_count),
        )
    console.print(table)
