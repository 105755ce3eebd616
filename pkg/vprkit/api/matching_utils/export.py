import os
from pathlib import Path

from vprkit.api.core_utils.bool_matrix import write_bool_matrix
from vprkit.api.core_utils.text_files import write_pairs
from vprkit.models.data import MatchMatrix


def write_matches(matches: MatchMatrix, directory: str | os.PathLike, stem: str = "matches") -> tuple[Path, Path]:
    """Write M as `<stem>.vprb` and as an "i j" pair list `<stem>.txt`."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    matrix_path, pairs_path = directory / f"{stem}.vprb", directory / f"{stem}.txt"
    write_bool_matrix(matches.matches, matrix_path)
    write_pairs(matches.pairs(), pairs_path)
    return matrix_path, pairs_path
