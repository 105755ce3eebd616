"""On-disk layout of a traverse: `<name>.vprd` descriptors plus `<name>_places.txt`."""

import os
from pathlib import Path

from vprkit.api.core_utils.descriptor_file import read_descriptors, write_descriptors
from vprkit.api.core_utils.text_files import read_place_ids, write_place_ids
from vprkit.models.synth import Traverse


def traverse_paths(directory: str | os.PathLike, name: str) -> tuple[Path, Path]:
    directory = Path(directory)
    return directory / f"{name}.vprd", directory / f"{name}_places.txt"


def write_traverse(traverse: Traverse, directory: str | os.PathLike, name: str) -> tuple[Path, Path]:
    descriptor_path, places_path = traverse_paths(directory, name)
    descriptor_path.parent.mkdir(parents=True, exist_ok=True)
    write_descriptors(traverse.descriptors, descriptor_path)
    write_place_ids(traverse.place_ids, places_path)
    return descriptor_path, places_path


def read_traverse(directory: str | os.PathLike, name: str) -> Traverse:
    descriptor_path, places_path = traverse_paths(directory, name)
    return Traverse(
        descriptors=read_descriptors(descriptor_path),
        place_ids=read_place_ids(places_path),
    )
