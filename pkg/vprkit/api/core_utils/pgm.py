"""
Netpbm grayscale (PGM) reading and writing.

Supports the plain (P2) and raw (P5) variants with maxval up to 65535;
raw samples above 255 are stored as big-endian 16-bit words.
"""

import logging
import os
import re
from pathlib import Path
from typing import Iterator

import numpy as np
from PIL import Image

from vprkit.core.exceptions import FormatError, SizeError
from vprkit.models.data import GrayImage

logger = logging.getLogger(__name__)

PGM_SUFFIXES = {".pgm", ".pnm"}
MAX_MAXVAL = 65535
_TOKEN = re.compile(rb"#[^\r\n]*|\S+")


def _tokens(data: bytes, start: int = 0) -> Iterator[tuple[bytes, int]]:
    """Yield (token, byte offset), skipping '#' comments."""
    for match in _TOKEN.finditer(data, start):
        token = match.group()
        if token.startswith(b"#"):
            continue
        yield token, match.start()


def _header_int(token: bytes, offset: int, field: str) -> int:
    if not token.isdigit():
        raise FormatError(f"PGM {field} is not a decimal integer: {token[:16]!r}", offset)
    return int(token)


def parse_pgm(data: bytes) -> GrayImage:
    if len(data) < 2:
        raise SizeError("PGM file is truncated before the magic number")
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise FormatError(f"unsupported PGM magic {magic!r}", 0)
    if len(data) > 2 and not data[2:3].isspace() and data[2:3] != b"#":
        raise FormatError("magic number must be followed by whitespace", 2)

    tokens = _tokens(data, 2)
    header: list[int] = []
    last_end = 2
    for field in ("width", "height", "maxval"):
        try:
            token, offset = next(tokens)
        except StopIteration:
            raise SizeError(f"PGM header is truncated before {field}")
        header.append(_header_int(token, offset, field))
        last_end = offset + len(token)
    width, height, maxval = header
    if width < 1 or height < 1:
        raise FormatError(f"PGM dimensions must be positive, got {width}x{height}", 3)
    if not 1 <= maxval <= MAX_MAXVAL:
        raise FormatError(f"PGM maxval {maxval} outside 1..{MAX_MAXVAL}", last_end)

    count = width * height
    if magic == b"P5":
        if last_end >= len(data):
            raise SizeError("PGM raster is missing")
        if not data[last_end : last_end + 1].isspace():
            raise FormatError("maxval must be followed by a single whitespace byte", last_end)
        raster_start = last_end + 1
        dtype = np.dtype("u1") if maxval < 256 else np.dtype(">u2")
        needed = count * dtype.itemsize
        available = len(data) - raster_start
        if available < needed:
            raise SizeError(
                f"PGM raster truncated: expected {needed} bytes, found {available}"
            )
        samples = np.frombuffer(data, dtype=dtype, count=count, offset=raster_start)
        samples = samples.astype(np.int64)
        if samples.max() > maxval:
            bad = int(np.argmax(samples > maxval))
            raise FormatError(
                f"sample {samples[bad]} exceeds maxval {maxval}",
                raster_start + bad * dtype.itemsize,
            )
    else:
        values: list[int] = []
        for token, offset in tokens:
            sample = _header_int(token, offset, "sample")
            if sample > maxval:
                raise FormatError(f"sample {sample} exceeds maxval {maxval}", offset)
            values.append(sample)
            if len(values) == count:
                break
        if len(values) < count:
            raise SizeError(f"PGM raster truncated: expected {count} samples, found {len(values)}")
        samples = np.asarray(values, dtype=np.int64)

    pixels = samples.reshape(height, width).astype(np.float64) / maxval
    return GrayImage(pixels=pixels)


def load_pgm(path: str | os.PathLike) -> GrayImage:
    data = Path(path).read_bytes()
    image = parse_pgm(data)
    logger.debug(f"Loaded {path}: {image.width}x{image.height}")
    return image


def encode_pgm(image: GrayImage, maxval: int = 255, plain: bool = False) -> bytes:
    if not 1 <= maxval <= MAX_MAXVAL:
        raise ValueError(f"maxval must lie in 1..{MAX_MAXVAL}")
    samples = np.rint(image.pixels * maxval).astype(np.int64)
    if plain:
        rows = "\n".join(" ".join(str(v) for v in row) for row in samples)
        return f"P2\n{image.width} {image.height}\n{maxval}\n{rows}\n".encode("ascii")
    header = f"P5\n{image.width} {image.height}\n{maxval}\n".encode("ascii")
    dtype = "u1" if maxval < 256 else ">u2"
    return header + samples.astype(dtype).tobytes()


def write_pgm(
    image: GrayImage, path: str | os.PathLike, maxval: int = 255, plain: bool = False
) -> None:
    Path(path).write_bytes(encode_pgm(image, maxval=maxval, plain=plain))


def load_image(path: str | os.PathLike) -> GrayImage:
    """PGM files are parsed exactly; other raster formats are converted to luma."""
    path = Path(path)
    if path.suffix.lower() in PGM_SUFFIXES:
        return load_pgm(path)
    with Image.open(path) as img:
        luma = np.asarray(img.convert("L"), dtype=np.float64) / 255.0
    return GrayImage(pixels=luma)


def list_image_files(directory: str | os.PathLike) -> list[Path]:
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"image directory {directory} not found")
    return sorted(p for p in directory.iterdir() if p.is_file() and not p.name.startswith("."))


def load_image_dir(directory: str | os.PathLike) -> list[GrayImage]:
    return [load_image(path) for path in list_image_files(directory)]
