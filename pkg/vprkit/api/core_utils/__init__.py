"""
Core data utilities: file formats, ground-truth construction and bundle checks.
"""

from vprkit.api.core_utils.pgm import (
    load_pgm,
    parse_pgm,
    write_pgm,
    encode_pgm,
    load_image,
    load_image_dir,
    list_image_files,
)
from vprkit.api.core_utils.descriptor_file import (
    read_descriptors,
    write_descriptors,
    read_similarity,
    write_similarity,
    decode_matrix,
    encode_matrix,
)
from vprkit.api.core_utils.bool_matrix import read_bool_matrix, write_bool_matrix
from vprkit.api.core_utils.text_files import (
    read_pairs,
    write_pairs,
    read_place_ids,
    write_place_ids,
)
from vprkit.api.core_utils.ground_truth import (
    dilate,
    build_ground_truth,
    read_ground_truth,
    mask_ground_truth,
)
from vprkit.api.core_utils.bundle import validate_bundle

__all__ = [
    # Images
    "load_pgm",
    "parse_pgm",
    "write_pgm",
    "encode_pgm",
    "load_image",
    "load_image_dir",
    "list_image_files",
    # Matrix files
    "read_descriptors",
    "write_descriptors",
    "read_similarity",
    "write_similarity",
    "decode_matrix",
    "encode_matrix",
    "read_bool_matrix",
    "write_bool_matrix",
    # Text files
    "read_pairs",
    "write_pairs",
    "read_place_ids",
    "write_place_ids",
    # Ground truth
    "dilate",
    "build_ground_truth",
    "read_ground_truth",
    "mask_ground_truth",
    "validate_bundle",
]
