import logging
from pathlib import Path
from typing import Optional

import numpy as np
import typer

from vprkit.api.cli_utils.runner import cli_command, console, stage
from vprkit.api.core_utils import load_image_dir, write_descriptors
from vprkit.api.descriptor_utils import (
    aggregate_bovw,
    aggregate_vlad,
    extract_holistic_batch,
    extract_local_batch,
    kmeans_fit,
    read_codebook,
    write_codebook,
)
from vprkit.models.config import DescriptorMethod
from vprkit.models.data import DescriptorMatrix

logger = logging.getLogger(__name__)


@cli_command
def cmd_extract(
    images: Path = typer.Argument(..., help="Directory of PGM (or other raster) images"),
    out: Path = typer.Option(..., "--out", help="Output descriptor file (.vprd)"),
    method: DescriptorMethod = typer.Option(DescriptorMethod.PATCHNORM, "--method"),
    grid_rows: int = typer.Option(4, "--grid-rows", min=1),
    grid_cols: int = typer.Option(4, "--grid-cols", min=1),
    patch: int = typer.Option(8, "--patch", min=1),
    stride: int = typer.Option(4, "--stride", min=1, help="Local grid stride (bovw/vlad)"),
    local_patch: int = typer.Option(8, "--local-patch", min=1),
    local_dim: Optional[int] = typer.Option(None, "--local-dim", min=1),
    codebook: Optional[Path] = typer.Option(
        None, "--codebook", help="Codebook file; trained and written here when missing"
    ),
    codebook_size: int = typer.Option(16, "--codebook-size", min=1),
    iters: int = typer.Option(20, "--iters", min=2),
    seed: int = typer.Option(0, "--seed", min=0),
    label: Optional[str] = typer.Option(None, "--label", help="Condition label for every row"),
):
    """Describe every image of a directory and write one VPRD descriptor file."""
    if method is DescriptorMethod.IMPORT:
        raise typer.BadParameter("'import' is not an extraction method", param_hint="--method")

    with stage("extract"):
        frames = load_image_dir(images)
        labels = [label] * len(frames) if label else None
        if method is DescriptorMethod.PATCHNORM:
            descriptors = extract_holistic_batch(frames, grid_rows, grid_cols, patch, labels=labels)
        else:
            features = extract_local_batch(frames, stride, local_patch, local_dim)
            if codebook is not None and codebook.exists():
                words = read_codebook(codebook)
            else:
                samples = np.vstack([f.vectors for f in features])
                words = kmeans_fit(samples, codebook_size, iters, seed)
                if codebook is not None:
                    write_codebook(words, codebook)
                else:
                    logger.warning("Codebook trained on this set only; pass --codebook to share it")
            aggregate = aggregate_bovw if method is DescriptorMethod.BOVW else aggregate_vlad
            descriptors = DescriptorMatrix(
                values=np.vstack([aggregate(f, words) for f in features]), labels=labels
            )
        out.parent.mkdir(parents=True, exist_ok=True)
        write_descriptors(descriptors, out)

    console.print(f"{descriptors.n} descriptors of dim {descriptors.d} written to {out}")
