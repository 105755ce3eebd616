"""
Matching decisions: best match per query, thresholds and exclusion bands.
"""

from vprkit.api.matching_utils.exclusion import exclusion_mask, apply_exclusion
from vprkit.api.matching_utils.decisions import (
    best_match_rows,
    best_match_per_query,
    threshold_match,
    threshold_best_matches,
    auto_threshold,
    match_similarity,
)
from vprkit.api.matching_utils.export import write_matches

__all__ = [
    "exclusion_mask",
    "apply_exclusion",
    "best_match_rows",
    "best_match_per_query",
    "threshold_match",
    "threshold_best_matches",
    "auto_threshold",
    "match_similarity",
    "write_matches",
]
