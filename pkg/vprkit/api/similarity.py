import logging
from pathlib import Path
from typing import Optional

import typer

from vprkit.api.cli_utils import CliSession, cli_command, console, output_lock, stage
from vprkit.api.core_utils import read_descriptors, write_similarity
from vprkit.api.similarity_utils import export_heatmap, seq_refine, similarity_matrix
from vprkit.core.exceptions import ConfigError
from vprkit.models.similarity import SeqParams

logger = logging.getLogger(__name__)


@cli_command
def cmd_similarity(
    q: Path = typer.Option(..., "--q", help="Query descriptors (.vprd)"),
    db: Optional[Path] = typer.Option(None, "--db", help="Database descriptors (.vprd), multi-session only"),
    session: CliSession = typer.Option(CliSession.MULTI, "--session"),
    metric: str = typer.Option("cosine", "--metric", help="cosine or neg_euclidean"),
    seq_length: int = typer.Option(1, "--seq-length", min=1, help="Odd sequence length; 1 disables refinement"),
    v_min: float = typer.Option(0.8, "--v-min"),
    v_max: float = typer.Option(1.2, "--v-max"),
    v_steps: int = typer.Option(5, "--v-steps", min=1),
    out: Path = typer.Option(Path("out"), "--out", help="Output directory"),
):
    """Compare two descriptor files and write similarity.vprd plus a PGM heatmap."""
    single = session is CliSession.SINGLE
    if single and db is not None:
        raise ConfigError("--db is not used in single-session mode")
    if not single and db is None:
        raise ConfigError("--db is required in multi-session mode")

    with output_lock(out) as out_dir:
        with stage("similarity"):
            query = read_descriptors(q)
            reference = query if single else read_descriptors(db)
            similarity = similarity_matrix(reference, query, metric)
            if seq_length > 1:
                params = SeqParams(length=seq_length, v_min=v_min, v_max=v_max, v_steps=v_steps)
                similarity = seq_refine(similarity, params)
            write_similarity(similarity, out_dir / "similarity.vprd")
            export_heatmap(similarity, out_dir / "similarity.pgm")

    rows, cols = similarity.shape
    console.print(f"S {rows}x{cols} ({similarity.metric_tag.value}) written to {out_dir}")
