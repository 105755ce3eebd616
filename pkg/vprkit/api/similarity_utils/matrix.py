"""
Pairwise similarity matrices.

S has one row per database descriptor and one column per query descriptor
(S = D_db · D_qᵀ for normalized descriptors).
"""

import enum
import logging

import numpy as np

from vprkit.core.exceptions import DimensionError, SizeError
from vprkit.models.data import EXCLUDED, DescriptorMatrix, MetricTag, SimilarityMatrix

logger = logging.getLogger(__name__)

DISTANCE_CHUNK = 1024


class DistanceConversion(str, enum.Enum):
    NEGATE = "negate"
    RECIPROCAL = "reciprocal"


def _normalized_rows(values: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(values, axis=1, keepdims=True)
    # Zero rows stay zero so their cosine with anything is 0
    return np.divide(values, norms, out=np.zeros_like(values), where=norms > 0)


def cosine_similarity(db: np.ndarray, q: np.ndarray) -> np.ndarray:
    return np.clip(_normalized_rows(db) @ _normalized_rows(q).T, -1.0, 1.0)


def neg_euclidean_similarity(db: np.ndarray, q: np.ndarray) -> np.ndarray:
    """-||d_i - q_j|| from explicit differences, exact 0 on identical rows."""
    out = np.empty((db.shape[0], q.shape[0]), dtype=np.float64)
    for start in range(0, q.shape[0], DISTANCE_CHUNK):
        chunk = q[start : start + DISTANCE_CHUNK]
        diff = db[:, None, :] - chunk[None, :, :]
        out[:, start : start + len(chunk)] = -np.sqrt(np.einsum("ijd,ijd->ij", diff, diff))
    return out


def similarity_matrix(
    db: DescriptorMatrix, q: DescriptorMatrix, metric: MetricTag | str = MetricTag.COSINE
) -> SimilarityMatrix:
    metric = MetricTag(metric)
    if db.d != q.d:
        raise DimensionError(f"database descriptors have d={db.d}, query descriptors d={q.d}")
    if db.n < 1 or q.n < 1:
        raise SizeError("similarity needs at least one database and one query descriptor")

    if metric is MetricTag.COSINE:
        values = cosine_similarity(db.values, q.values)
    elif metric is MetricTag.NEG_EUCLIDEAN:
        values = neg_euclidean_similarity(db.values, q.values)
    else:
        raise ValueError(f"'{metric.value}' is not a descriptor metric")
    logger.debug(f"Similarity matrix {values.shape} ({metric.value})")
    return SimilarityMatrix(values=values, metric_tag=metric)


def dist_to_sim(dist, mode: DistanceConversion | str = DistanceConversion.NEGATE):
    """Turn distances into similarities; both conversions reverse the order."""
    mode = DistanceConversion(mode)
    dist = np.asarray(dist, dtype=np.float64)
    if mode is DistanceConversion.NEGATE:
        sim = -dist
    else:
        if (dist <= 0).any():
            raise ValueError("reciprocal conversion requires strictly positive distances")
        sim = 1.0 / dist
    return sim if sim.ndim else float(sim)


def is_eligible(similarity: SimilarityMatrix | np.ndarray) -> np.ndarray:
    """Cells not carrying the EXCLUDED sentinel."""
    values = similarity.values if isinstance(similarity, SimilarityMatrix) else np.asarray(similarity)
    return values != EXCLUDED
