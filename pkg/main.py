from dotenv import load_dotenv

load_dotenv()

from typing import Optional

import typer

from vprkit import __version__
from vprkit.api import aggregate
from vprkit.api import evaluate
from vprkit.api import extract
from vprkit.api import match
from vprkit.api import pipeline
from vprkit.api import similarity
from vprkit.api import synth
from vprkit.core.config import get_settings
from vprkit.core.logging import setup_logging


app = typer.Typer(
    name="vprkit",
    help="""
    Visual place recognition toolkit.
    Builds synthetic or image-based datasets, describes and compares images,
    makes matching decisions and evaluates them with PR curves, AUPRC,
    R@P and recall@K.
    """,
    no_args_is_help=True,
    add_completion=False,
)


def _version(value: bool) -> None:
    if value:
        typer.echo(f"vprkit {__version__}")
        raise typer.Exit()


@app.callback()
def main(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging"),
    log_level: Optional[str] = typer.Option(None, "--log-level", help="Overrides VPRKIT_LOG_LEVEL"),
    version: bool = typer.Option(False, "--version", callback=_version, is_eager=True),
):
    level = "DEBUG" if verbose else (log_level or get_settings().log_level)
    setup_logging(level)


# Dataset commands
app.command("synth")(synth.cmd_synth)
app.command("extract")(extract.cmd_extract)
# Comparison and decisions
app.command("similarity")(similarity.cmd_similarity)
app.command("match")(match.cmd_match)
# Evaluation
app.command("eval")(evaluate.cmd_eval)
app.command("pipeline")(pipeline.cmd_pipeline)
app.command("aggregate")(aggregate.cmd_aggregate)


if __name__ == "__main__":
    app()
