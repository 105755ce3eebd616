"""
Synthetic world and traverse generation with exact ground truth.
"""

from vprkit.api.synth_utils.world import generate_world
from vprkit.api.synth_utils.traverse import generate_traverse, expand_events
from vprkit.api.synth_utils.ground_truth import derive_gt
from vprkit.api.synth_utils.export import write_traverse, read_traverse

__all__ = [
    "generate_world",
    "generate_traverse",
    "expand_events",
    "derive_gt",
    "write_traverse",
    "read_traverse",
]
