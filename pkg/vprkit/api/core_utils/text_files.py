"""Line-oriented text files: index pairs ("i j") and per-frame place ids."""

import os
from pathlib import Path
from typing import Iterable

import numpy as np

from vprkit.core.exceptions import FormatError


def _content_lines(path: str | os.PathLike):
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def read_pairs(path: str | os.PathLike) -> list[tuple[int, int]]:
    pairs = []
    for lineno, line in _content_lines(path):
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise FormatError(f"{path}: line {lineno}: expected two indices 'i j', got {line!r}")
        pairs.append((int(parts[0]), int(parts[1])))
    return pairs


def write_pairs(pairs: Iterable[tuple[int, int]], path: str | os.PathLike) -> None:
    lines = [f"{i} {j}\n" for i, j in pairs]
    Path(path).write_text("".join(lines), encoding="utf-8")


def read_place_ids(path: str | os.PathLike) -> np.ndarray:
    ids = []
    for lineno, line in _content_lines(path):
        try:
            ids.append(int(line))
        except ValueError:
            raise FormatError(f"{path}: line {lineno}: expected an integer place id")
    return np.asarray(ids, dtype=np.int64)


def write_place_ids(place_ids: Iterable[int], path: str | os.PathLike) -> None:
    Path(path).write_text("".join(f"{int(p)}\n" for p in place_ids), encoding="utf-8")
