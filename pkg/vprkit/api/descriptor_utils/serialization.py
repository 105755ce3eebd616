"""
Codebook and PCA basis files.

The matrix rows go into a VPRD file; a TOML sidecar with the same stem
records the kind, shape and float64 metadata. Codebook rows are the
centroids; PCA rows are the mean followed by the components.
"""

import os
from pathlib import Path

import numpy as np
import tomli
from jinja2 import Environment, FileSystemLoader

from vprkit.api.core_utils.descriptor_file import decode_matrix, encode_matrix
from vprkit.core.exceptions import FormatError
from vprkit.models.descriptors import Codebook, PcaBasis

TEMPLATE_DIR = os.path.dirname(os.path.abspath(__file__))


def _render_sidecar(kind: str, matrix_path: Path, rows: int, dim: int, scalars=None, vectors=None) -> str:
    env = Environment(
        loader=FileSystemLoader(TEMPLATE_DIR),
        autoescape=False,
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
    )
    return env.get_template("sidecar.toml.j2").render(
        kind=kind,
        matrix_file=matrix_path.name,
        rows=rows,
        dim=dim,
        scalars=scalars or {},
        vectors={key: [float(v) for v in value] for key, value in (vectors or {}).items()},
    )


def _sidecar_path(path: Path) -> Path:
    return path.with_suffix(".toml")


def _read_sidecar(path: Path, kind: str) -> dict:
    sidecar = _sidecar_path(path)
    try:
        meta = tomli.loads(sidecar.read_text(encoding="utf-8"))
    except (OSError, tomli.TOMLDecodeError) as exc:
        raise FormatError(f"{sidecar}: unreadable sidecar: {exc}")
    if meta.get("kind") != kind:
        raise FormatError(f"{sidecar}: expected kind '{kind}', found {meta.get('kind')!r}")
    return meta


def write_codebook(codebook: Codebook, path: str | os.PathLike) -> None:
    path = Path(path)
    path.write_bytes(encode_matrix(codebook.centroids))
    _sidecar_path(path).write_text(
        _render_sidecar("codebook", path, codebook.k, codebook.d), encoding="utf-8"
    )


def read_codebook(path: str | os.PathLike) -> Codebook:
    path = Path(path)
    meta = _read_sidecar(path, "codebook")
    centroids, _ = decode_matrix(path.read_bytes())
    if centroids.shape != (meta["rows"], meta["dim"]):
        raise FormatError(f"{path}: shape {centroids.shape} disagrees with sidecar")
    return Codebook(centroids=centroids)


def write_pca_basis(basis: PcaBasis, path: str | os.PathLike) -> None:
    """Mean and components are stored as float32 rows; the variances keep float64 in the sidecar."""
    path = Path(path)
    rows = np.vstack([basis.mean[None, :], basis.components])
    path.write_bytes(encode_matrix(rows))
    _sidecar_path(path).write_text(
        _render_sidecar(
            "pca",
            path,
            rows.shape[0],
            rows.shape[1],
            scalars={"total_variance": basis.total_variance},
            vectors={"explained_variance": basis.explained_variance},
        ),
        encoding="utf-8",
    )


def read_pca_basis(path: str | os.PathLike) -> PcaBasis:
    path = Path(path)
    meta = _read_sidecar(path, "pca")
    rows, _ = decode_matrix(path.read_bytes())
    if rows.shape != (meta["rows"], meta["dim"]) or rows.shape[0] < 2:
        raise FormatError(f"{path}: shape {rows.shape} disagrees with sidecar")
    return PcaBasis(
        mean=rows[0],
        components=rows[1:],
        explained_variance=np.asarray(meta["explained_variance"], dtype=np.float64),
        total_variance=float(meta["total_variance"]),
    )
