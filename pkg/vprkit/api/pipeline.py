import logging
from pathlib import Path
from typing import Optional

import typer

from vprkit.api.cli_utils import (
    CliMode,
    CliSession,
    cli_command,
    console,
    load_run_config,
    parse_threshold,
    run_pipeline,
)
from vprkit.api.evaluate import print_report

logger = logging.getLogger(__name__)


@cli_command
def cmd_pipeline(
    config: Path = typer.Option(..., "--config", "-c", help="Run config (TOML)"),
    seed: Optional[int] = typer.Option(None, "--seed", min=0),
    out: Optional[Path] = typer.Option(None, "--out", help="Output directory"),
    mode: Optional[CliMode] = typer.Option(None, "--mode", help="Matching and evaluation mode"),
    session: Optional[CliSession] = typer.Option(None, "--session"),
    threshold: Optional[str] = typer.Option(None, "--threshold", help="'auto' (Otsu) or a number"),
):
    """
    Run extract -> standardize -> similarity -> refine -> match -> evaluate.

    Writes similarity.vprd/.pgm, matches.vprb/.txt and, with ground truth,
    report.json, pr.csv and pr.svg into the output directory.

    auprc covers only the recall range the curve reaches, so even a perfect
    matcher can score below 1. auprc_from_origin anchors the curve at
    recall 0, precision 1 and reaches 1 for perfect separation.
    """
    match_mode = mode.to_match_mode().value if mode else None
    overrides = {
        "seed": seed,
        "out": str(out) if out else None,
        "matching.mode": match_mode,
        "evaluation.mode": match_mode,
        "dataset.session": session.value if session else None,
        "matching.threshold": parse_threshold(threshold),
    }
    run = load_run_config(config, overrides)
    result = run_pipeline(run)

    if result.report is not None:
        print_report(result.report)
    used = "none" if result.threshold is None else f"{result.threshold:.6g}"
    console.print(f"{result.n_matches} matches (threshold {used}); outputs in {result.out}")
