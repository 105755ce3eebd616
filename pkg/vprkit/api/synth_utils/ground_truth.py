import numpy as np

from vprkit.api.core_utils.ground_truth import dilate
from vprkit.models.data import GroundTruth
from vprkit.models.synth import UNMAPPED, Traverse


def derive_gt(db: Traverse, q: Traverse, soft_radius: tuple[int, int] = (0, 0)) -> GroundTruth:
    """Exact GT from place ids: db frame i and query frame j match iff they show the same mapped place."""
    db_ids = db.place_ids[:, None]
    q_ids = q.place_ids[None, :]
    gt = (db_ids == q_ids) & (db_ids != UNMAPPED)
    return GroundTruth(gt=gt, gt_soft=dilate(gt, soft_radius))
