"""
"VPRD" float matrix files.

Layout (little-endian): magic "VPRD" | u32 version | u32 n | u32 d |
u8 has_labels | n×d float32 row-major | n × (u32 length + UTF-8 label).
Used for descriptors, exported similarity matrices, codebooks and PCA bases.
"""

import os
import struct
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from pydantic import ValidationError

from vprkit.core.exceptions import FormatError, LengthError, MagicError, VersionError
from vprkit.models.data import DescriptorMatrix, MetricTag, SimilarityMatrix

MAGIC = b"VPRD"
VERSION = 1
HEADER = struct.Struct("<4sIIIB")
LABEL_LENGTH = struct.Struct("<I")
FLOAT_DTYPE = np.dtype("<f4")


def decode_matrix(data: bytes) -> tuple[np.ndarray, Optional[tuple[str, ...]]]:
    if len(data) < HEADER.size:
        raise LengthError(f"VPRD header needs {HEADER.size} bytes, file has {len(data)}", len(data))
    magic, version, n, d, has_labels = HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise MagicError(f"bad magic {magic!r}, expected {MAGIC!r}", 0)
    if version != VERSION:
        raise VersionError(f"unsupported VPRD version {version}", 4)
    if has_labels not in (0, 1):
        raise FormatError(f"has_labels must be 0 or 1, got {has_labels}", 16)

    payload_end = HEADER.size + n * d * FLOAT_DTYPE.itemsize
    if len(data) < payload_end or (not has_labels and len(data) != payload_end):
        raise LengthError(
            f"header declares {n}x{d} floats ({payload_end - HEADER.size} bytes), "
            f"payload has {len(data) - HEADER.size} bytes",
            min(len(data), payload_end),
        )
    values = np.frombuffer(data, dtype=FLOAT_DTYPE, count=n * d, offset=HEADER.size)
    values = values.reshape(n, d).astype(np.float64)

    labels = None
    if has_labels:
        decoded: list[str] = []
        pos = payload_end
        for _ in range(n):
            if pos + LABEL_LENGTH.size > len(data):
                raise LengthError("label length prefix truncated", pos)
            (length,) = LABEL_LENGTH.unpack_from(data, pos)
            pos += LABEL_LENGTH.size
            if pos + length > len(data):
                raise LengthError("label text truncated", pos)
            try:
                decoded.append(data[pos : pos + length].decode("utf-8"))
            except UnicodeDecodeError as exc:
                raise FormatError(f"label is not valid UTF-8: {exc.reason}", pos)
            pos += length
        if pos != len(data):
            raise LengthError(f"{len(data) - pos} trailing bytes after labels", pos)
        labels = tuple(decoded)
    return values, labels


def encode_matrix(values: np.ndarray, labels: Optional[Sequence[str]] = None) -> bytes:
    values = np.asarray(values)
    n, d = values.shape
    parts = [HEADER.pack(MAGIC, VERSION, n, d, 1 if labels is not None else 0)]
    parts.append(np.ascontiguousarray(values, dtype=FLOAT_DTYPE).tobytes())
    if labels is not None:
        for label in labels:
            encoded = label.encode("utf-8")
            parts.append(LABEL_LENGTH.pack(len(encoded)))
            parts.append(encoded)
    return b"".join(parts)


def read_descriptors(path: str | os.PathLike) -> DescriptorMatrix:
    values, labels = decode_matrix(Path(path).read_bytes())
    try:
        return DescriptorMatrix(values=values, labels=labels)
    except ValidationError as exc:
        raise FormatError(f"{path}: invalid descriptor payload: {exc.errors()[0]['msg']}")


def write_descriptors(matrix: DescriptorMatrix, path: str | os.PathLike) -> None:
    Path(path).write_bytes(encode_matrix(matrix.values, matrix.labels))


def read_similarity(
    path: str | os.PathLike, metric_tag: MetricTag = MetricTag.REFINED
) -> SimilarityMatrix:
    """Imported similarities carry no metric tag on disk; the caller supplies it."""
    values, _ = decode_matrix(Path(path).read_bytes())
    try:
        return SimilarityMatrix(values=values, metric_tag=metric_tag)
    except ValidationError as exc:
        raise FormatError(f"{path}: invalid similarity payload: {exc.errors()[0]['msg']}")


def write_similarity(similarity: SimilarityMatrix, path: str | os.PathLike) -> None:
    Path(path).write_bytes(encode_matrix(similarity.values))
