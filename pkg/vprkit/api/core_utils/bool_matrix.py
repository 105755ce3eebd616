"""
"VPRB" boolean matrix files: magic | u32 version | u32 rows | u32 cols |
row-major bits, MSB first, each row padded to a byte boundary.
"""

import os
import struct
from pathlib import Path

import numpy as np

from vprkit.core.exceptions import LengthError, MagicError, VersionError

MAGIC = b"VPRB"
VERSION = 1
HEADER = struct.Struct("<4sIII")


def decode_bool_matrix(data: bytes) -> np.ndarray:
    if len(data) < HEADER.size:
        raise LengthError(f"VPRB header needs {HEADER.size} bytes", len(data))
    magic, version, rows, cols = HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise MagicError(f"bad magic {magic!r}, expected {MAGIC!r}", 0)
    if version != VERSION:
        raise VersionError(f"unsupported VPRB version {version}", 4)
    row_bytes = (cols + 7) // 8
    expected = HEADER.size + rows * row_bytes
    if len(data) != expected:
        raise LengthError(
            f"{rows}x{cols} matrix needs {expected} bytes, file has {len(data)}",
            min(len(data), expected),
        )
    packed = np.frombuffer(data, dtype=np.uint8, offset=HEADER.size).reshape(rows, row_bytes)
    return np.unpackbits(packed, axis=1, count=cols).astype(bool)


def encode_bool_matrix(matrix: np.ndarray) -> bytes:
    matrix = np.asarray(matrix, dtype=bool)
    rows, cols = matrix.shape
    return HEADER.pack(MAGIC, VERSION, rows, cols) + np.packbits(matrix, axis=1).tobytes()


def read_bool_matrix(path: str | os.PathLike) -> np.ndarray:
    return decode_bool_matrix(Path(path).read_bytes())


def write_bool_matrix(matrix: np.ndarray, path: str | os.PathLike) -> None:
    Path(path).write_bytes(encode_bool_matrix(matrix))


def is_bool_matrix_file(path: str | os.PathLike) -> bool:
    with open(path, "rb") as handle:
        return handle.read(4) == MAGIC
