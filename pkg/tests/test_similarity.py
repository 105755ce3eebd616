import numpy as np
import pytest

from vprkit.api.core_utils import load_pgm
from vprkit.api.similarity_utils import (
    dist_to_sim,
    export_heatmap,
    is_eligible,
    knn_topk,
    mutual_match_score,
    rerank_topk,
    seq_refine,
    sequence_descriptors,
    similarity_matrix,
)
from vprkit.core.exceptions import DimensionError, SizeError
from vprkit.models.data import EXCLUDED, DescriptorMatrix, LocalFeatureSet, MetricTag, SimilarityMatrix
from vprkit.models.similarity import SeqParams


def _matrix(rows) -> DescriptorMatrix:
    return DescriptorMatrix(values=np.asarray(rows, dtype=np.float64))


def _features(rows) -> LocalFeatureSet:
    vectors = np.asarray(rows, dtype=np.float64)
    return LocalFeatureSet(vectors=vectors, coords=np.zeros((vectors.shape[0], 2)))


def _refined(values) -> SimilarityMatrix:
    return SimilarityMatrix(values=values, metric_tag=MetricTag.REFINED)


# --- Similarity matrices ---


def test_cosine_hand_values():
    S = similarity_matrix(_matrix([[1, 0], [1, 2]]), _matrix([[0, 1], [1, 0]]))

    assert S.metric_tag is MetricTag.COSINE
    assert S.values[0].tolist() == [0.0, 1.0]

    S = similarity_matrix(_matrix([[1, 2, 3]]), _matrix([[4, 5, 6]]))
    assert S.values[0, 0] == pytest.approx(32 / (np.sqrt(14) * np.sqrt(77)))


def test_cosine_of_zero_vector_is_zero():
    S = similarity_matrix(_matrix([[0, 0], [3, 4]]), _matrix([[1, 1]]))

    assert S.values[0, 0] == 0.0


def test_rows_are_database_images():
    S = similarity_matrix(_matrix(np.eye(3)), _matrix(np.eye(3)[:2]))

    assert S.shape == (3, 2)


def test_negative_euclidean():
    db = _matrix([[0, 0], [3, 4]])

    S = similarity_matrix(db, db, "neg_euclidean")

    assert S.values.tolist() == [[0.0, -5.0], [-5.0, 0.0]]


def test_single_session_cosine_is_symmetric_with_unit_diagonal(rng):
    q = _matrix(rng.normal(size=(8, 5)))

    S = similarity_matrix(q, q).values

    assert S == pytest.approx(S.T)
    assert np.diag(S) == pytest.approx(np.ones(8))


def test_cosine_ignores_positive_scaling(rng):
    db, q = rng.normal(size=(6, 4)), rng.normal(size=(5, 4))
    scales = rng.uniform(0.1, 10.0, size=(6, 1))

    base = similarity_matrix(_matrix(db), _matrix(q))
    scaled = similarity_matrix(_matrix(db * scales), _matrix(q))

    assert scaled.values == pytest.approx(base.values, abs=1e-12)
    assert np.array_equal(knn_topk(base, 3).indices, knn_topk(scaled, 3).indices)


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        similarity_matrix(_matrix([[1, 2]]), _matrix([[1, 2, 3]]))


def test_distance_conversions(rng):
    assert dist_to_sim(2.5, "negate") == -2.5
    assert dist_to_sim(4.0, "reciprocal") == 0.25

    for _ in range(50):
        a, b = np.sort(rng.uniform(0.01, 10.0, size=2))
        for mode in ("negate", "reciprocal"):
            assert dist_to_sim(a, mode) >= dist_to_sim(b, mode)

    with pytest.raises(ValueError):
        dist_to_sim(0.0, "reciprocal")


# --- Retrieval ---


def test_topk_sorting_and_ties():
    result = knn_topk(_refined([[0.1], [0.9], [0.5]]), 2)

    assert result.indices.tolist() == [[1, 2]]
    assert result.similarities.tolist() == [[0.9, 0.5]]
    assert knn_topk(_refined([[0.5], [0.5]]), 1).indices.tolist() == [[0]]


def test_topk_matches_a_full_sort(rng):
    for _ in range(100):
        rows, cols = rng.integers(1, 9, size=2)
        values = rng.integers(0, 4, size=(rows, cols)) / 4.0
        k = int(rng.integers(1, rows + 1))

        result = knn_topk(_refined(values), k)

        for j in range(cols):
            oracle = sorted(range(rows), key=lambda i: (-values[i, j], i))[:k]
            assert result.indices[j].tolist() == oracle


def test_topk_range():
    with pytest.raises(ValueError):
        knn_topk(_refined([[0.1], [0.2]]), 3)


# --- Local matching ---


def test_mutual_matching_identity_and_singletons():
    features = _features([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    assert mutual_match_score(features, features) == 1.0
    assert mutual_match_score(_features([[1, 0]]), _features([[0, 1]])) == 1.0


def test_mutual_matching_hand_case():
    a = _features([[1, 0], [1, 0.5], [1, -0.5]])
    b = _features([[1, 0], [-1, 0], [0, -1]])

    assert mutual_match_score(a, b) == pytest.approx(1 / 3)


def test_mutual_matching_needs_features():
    with pytest.raises(SizeError):
        mutual_match_score(_features(np.zeros((0, 2))), _features([[1, 0]]))


def test_reranking_demotes_a_holistic_false_positive():
    S = _refined([[0.9], [0.8], [0.1]])
    query = _features([[1, 0], [0, 1]])
    local_db = [_features([[1, 0], [1, 0.1]]), _features([[1, 0], [0, 1]]), _features([[0, 1]])]

    refined = rerank_topk(S, knn_topk(S, 2), local_db, [query])

    assert refined.metric_tag is MetricTag.REFINED
    assert refined.values[:, 0].tolist() == [0.5, 1.0, EXCLUDED]
    assert knn_topk(refined, 1).indices.tolist() == [[1]]


def test_reranking_keeps_exactly_k_candidates(rng):
    S = _refined(rng.uniform(size=(5, 4)))
    local_db = [_features(rng.normal(size=(3, 4))) for _ in range(5)]
    local_q = [_features(rng.normal(size=(3, 4))) for _ in range(4)]

    sparse = rerank_topk(S, knn_topk(S, 2), local_db, local_q)
    dense = rerank_topk(S, knn_topk(S, 5), local_db, local_q)

    assert is_eligible(sparse).sum(axis=0).tolist() == [2, 2, 2, 2]
    assert is_eligible(dense).all()


def test_reranking_needs_every_local_set(rng):
    S = _refined(rng.uniform(size=(3, 2)))

    with pytest.raises(SizeError):
        rerank_topk(S, knn_topk(S, 1), [_features([[1, 0]])] * 2, [_features([[1, 0]])] * 2)


# --- Sequences ---


def test_sequence_length_one_is_identity(rng):
    S = _refined(rng.uniform(size=(4, 6)))

    assert np.array_equal(seq_refine(S, SeqParams(length=1)).values, S.values)


def test_constant_matrix_stays_constant():
    S = _refined(np.full((6, 7), 0.3))

    assert seq_refine(S, SeqParams(length=5)).values == pytest.approx(np.full((6, 7), 0.3))


def test_diagonal_segment_scores():
    S = _refined(np.eye(5))

    refined = seq_refine(S, SeqParams(length=3, v_min=1.0, v_max=1.0, v_steps=1)).values

    assert refined[2, 2] == pytest.approx(1.0)
    assert refined[2, 1] == 0.0
    # (0, 1) clamps its t=-1 sample onto the diagonal corner (0, 0)
    assert refined[0, 1] == pytest.approx(1 / 3)


def _brute_force_refine(values, params):
    rows, cols = values.shape
    half = (params.length - 1) // 2
    out = np.full((rows, cols), -np.inf)
    for v in params.velocities():
        for i in range(rows):
            for j in range(cols):
                samples = [
                    values[min(max(i + int(np.rint(v * t)), 0), rows - 1), min(max(j + t, 0), cols - 1)]
                    for t in range(-half, half + 1)
                ]
                out[i, j] = max(out[i, j], sum(samples) / params.length)
    return out


def test_refinement_matches_line_enumeration_and_stays_in_range(rng):
    params = SeqParams(length=5, v_min=0.5, v_max=2.0, v_steps=4)
    for _ in range(20):
        values = rng.uniform(size=tuple(rng.integers(1, 9, size=2)))

        refined = seq_refine(_refined(values), params).values

        assert refined == pytest.approx(_brute_force_refine(values, params), abs=1e-12)
        assert refined.min() >= values.min() - 1e-12
        assert refined.max() <= values.max() + 1e-12


def test_refinement_is_monotone(rng):
    low = rng.uniform(size=(6, 6))
    high = low + rng.uniform(0.0, 0.5, size=(6, 6))
    params = SeqParams(length=3)

    assert (seq_refine(_refined(low), params).values <= seq_refine(_refined(high), params).values + 1e-12).all()


def test_sequence_params_validation():
    with pytest.raises(ValueError):
        SeqParams(length=4)
    with pytest.raises(ValueError):
        SeqParams(v_min=1.5, v_max=1.0)


def test_sequence_descriptors_windows():
    D = _matrix([[1.0], [2.0], [3.0]])

    assert sequence_descriptors(D, 3, "mean").values[:, 0] == pytest.approx([4 / 3, 2.0, 8 / 3])
    assert sequence_descriptors(D, 3, "concat").values.tolist() == [[1, 1, 2], [1, 2, 3], [2, 3, 3]]
    assert sequence_descriptors(D, 3, "delta").values[:, 0].tolist() == [1.0, 1.0, 1.0]


def test_sequence_descriptor_degenerate_windows():
    D = _matrix([[1.0, 2.0], [1.0, 2.0], [1.0, 2.0]])

    assert np.array_equal(sequence_descriptors(D, 1, "concat").values, D.values)
    assert np.array_equal(sequence_descriptors(D, 1, "mean").values, D.values)
    assert not sequence_descriptors(D, 1, "delta").values.any()
    assert sequence_descriptors(D, 3, "mean").values == pytest.approx(D.values)
    assert not sequence_descriptors(D, 3, "delta").values.any()

    with pytest.raises(SizeError):
        sequence_descriptors(D, 5, "mean")


# --- Heatmap ---


def test_heatmap_maps_eligible_cells_to_gray_levels(tmp_path):
    path = tmp_path / "S.pgm"

    export_heatmap(_refined([[0.0, 1.0], [0.5, EXCLUDED]]), path)

    assert load_pgm(path).pixels.tolist() == [[0.0, 1.0], [128 / 255, 0.0]]


def test_constant_heatmap_is_black(tmp_path):
    path = tmp_path / "S.pgm"

    export_heatmap(_refined(np.full((2, 3), 0.7)), path)

    assert not load_pgm(path).pixels.any()
