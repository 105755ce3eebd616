import logging
from pathlib import Path
from typing import Optional

import numpy as np
import typer
from rich.table import Table

from vprkit.api.cli_utils import (
    CliSession,
    check_bundle,
    cli_command,
    console,
    load_run_config,
    output_lock,
    stage,
    synth_traverses,
)
from vprkit.api.core_utils import write_bool_matrix, write_pairs
from vprkit.api.synth_utils import derive_gt, write_traverse
from vprkit.core.exceptions import ConfigError
from vprkit.models.data import DatasetBundle, SessionMode

logger = logging.getLogger(__name__)


@cli_command
def cmd_synth(
    config: Path = typer.Option(..., "--config", "-c", help="Run config (TOML) with a [synth] section"),
    seed: Optional[int] = typer.Option(None, "--seed", min=0, help="Overrides the config seed"),
    out: Optional[Path] = typer.Option(None, "--out", help="Output directory"),
    session: Optional[CliSession] = typer.Option(None, "--session"),
):
    """
    Generate a synthetic DB/Q pair of traverses with exact ground truth.

    Writes q.vprd, q_places.txt (plus db.* in multi-session mode), gt.txt
    and, for a non-zero soft radius, gt_soft.vprb.
    """
    overrides = {
        "seed": seed,
        "out": str(out) if out else None,
        "dataset.session": session.value if session else None,
    }
    run = load_run_config(config, overrides, check_files=False)
    if run.synth is None:
        raise ConfigError(f"{config}: synth needs a [synth] section")
    single = run.dataset.session is SessionMode.SINGLE

    with output_lock(run.out) as out_dir:
        with stage("synth"):
            db, q = synth_traverses(run)
            ground_truth = derive_gt(db, q, run.evaluation.soft_radius)
            check_bundle(
                DatasetBundle(
                    name=run.dataset.name,
                    session_mode=run.dataset.session,
                    db_descriptors=None if single else db.descriptors,
                    q_descriptors=q.descriptors,
                    ground_truth=ground_truth,
                )
            )

            write_traverse(q, out_dir, "q")
            if not single:
                write_traverse(db, out_dir, "db")
            pairs = [(int(i), int(j)) for i, j in np.argwhere(ground_truth.gt)]
            write_pairs(pairs, out_dir / "gt.txt")
            if run.evaluation.soft_radius != (0, 0):
                write_bool_matrix(ground_truth.gt_soft, out_dir / "gt_soft.vprb")

    table = Table(title=f"Synthetic dataset '{run.dataset.name}'")
    table.add_column("set")
    table.add_column("frames", justify="right")
    table.add_column("unmapped", justify="right")
    for name, traverse in [("q", q)] if single else [("db", db), ("q", q)]:
        table.add_row(name, str(len(traverse)), str(int((traverse.place_ids < 0).sum())))
    console.print(table)
    console.print(f"{len(pairs)} ground-truth pairs written to {out_dir}")
