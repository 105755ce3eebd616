import logging
from pathlib import Path
from typing import Optional

import typer

from vprkit.api.cli_utils import CliMode, cli_command, console, output_lock, parse_threshold, stage
from vprkit.api.core_utils import read_similarity
from vprkit.api.matching_utils import apply_exclusion, exclusion_mask, match_similarity, write_matches

logger = logging.getLogger(__name__)


@cli_command
def cmd_match(
    similarity_file: Path = typer.Argument(..., help="Similarity matrix (.vprd), rows = DB, cols = Q"),
    mode: CliMode = typer.Option(CliMode.SINGLE_BEST, "--mode"),
    threshold: Optional[str] = typer.Option(None, "--threshold", help="'auto' (Otsu) or a number"),
    exclusion: Optional[int] = typer.Option(
        None, "--exclusion", min=0, help="Single-session: ignore cells with |i-j| <= N"
    ),
    online: bool = typer.Option(False, "--online", help="Single-session: only earlier frames are candidates"),
    out: Path = typer.Option(Path("out"), "--out", help="Output directory"),
):
    """Turn a similarity matrix into matching decisions (matches.vprb + matches.txt)."""
    theta_option = parse_threshold(threshold)

    with output_lock(out) as out_dir:
        with stage("match"):
            similarity = read_similarity(similarity_file)
            if exclusion is not None or online:
                similarity = apply_exclusion(
                    similarity, exclusion_mask(similarity.shape, exclusion, online)
                )
            matches, theta = match_similarity(similarity, mode.to_match_mode(), theta_option)
            write_matches(matches, out_dir)

    used = "none" if theta is None else f"{theta:.6g}"
    console.print(f"{int(matches.matches.sum())} matches ({mode.value}, threshold {used}) written to {out_dir}")
