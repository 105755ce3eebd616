import itertools
import math
import time

import numpy as np
import pandas as pd
import pytest

from vprkit.api.evaluation_utils import (
    aggregate_runs,
    aggregates_frame,
    auprc,
    confusion_counts,
    evaluate_similarity,
    pr_curve,
    precision_recall_point,
    read_report_json,
    recall_at_k,
    recall_at_precision,
    threshold_grid,
    write_pr_csv,
    write_pr_svg,
    write_report_json,
)
from vprkit.api.matching_utils import best_match_per_query, threshold_match
from vprkit.core.exceptions import DimensionError, EvaluationError
from vprkit.models.data import EXCLUDED, GroundTruth, MatchMatrix, MatchMode, MetricTag, SimilarityMatrix
from vprkit.models.evaluation import MetricReport, PRCurve


def _truth(gt, gt_soft=None) -> GroundTruth:
    gt = np.asarray(gt, dtype=bool)
    return GroundTruth(gt=gt, gt_soft=gt if gt_soft is None else gt_soft)


def _instances(random_instance, count=60):
    """Random instances that have at least one ground-truth pair."""
    produced = 0
    while produced < count:
        S, truth = random_instance()
        if truth.gt.any():
            produced += 1
            yield S, truth


def _brute_counts(m, gt, gt_soft):
    tp = fp = 0
    for i, j in itertools.product(range(m.shape[0]), range(m.shape[1])):
        if not m[i, j]:
            continue
        if gt[i, j]:
            tp += 1
        elif not gt_soft[i, j]:
            fp += 1
    return tp, fp


# --- confusion counts ---


def test_counts_hand_example():
    matches = MatchMatrix(matches=[[1, 0], [1, 1]], mode=MatchMode.MULTI_MATCH)

    counts = confusion_counts(matches, _truth(np.eye(2)))

    assert (counts.tp, counts.fp, counts.fn, counts.gtp) == (2, 1, 0, 2)
    assert precision_recall_point(counts) == (pytest.approx(2 / 3), 1.0)


def test_soft_only_cells_are_ignored():
    matches = MatchMatrix(matches=[[1, 0], [1, 1]], mode=MatchMode.MULTI_MATCH)
    soft = np.array([[1, 0], [1, 1]], dtype=bool)

    counts = confusion_counts(matches, _truth(np.eye(2), soft))

    assert (counts.tp, counts.fp) == (2, 0)
    assert counts.precision == 1.0


def test_perfect_matcher():
    gt = np.array([[1, 0, 0], [1, 0, 1], [0, 0, 0]], dtype=bool)

    counts = confusion_counts(MatchMatrix(matches=gt, mode=MatchMode.MULTI_MATCH), _truth(gt))

    assert counts.fp == 0 and counts.tp == counts.gtp == 3
    assert precision_recall_point(counts) == (1.0, 1.0)


def test_gtp_depends_on_mode():
    gt = np.array([[1, 0], [1, 0]], dtype=bool)
    single = MatchMatrix(matches=[[1, 0], [0, 0]], mode=MatchMode.SINGLE_BEST)

    assert confusion_counts(single, _truth(gt)).gtp == 1
    assert confusion_counts(single, _truth(gt), MatchMode.MULTI_MATCH).gtp == 2


def test_nothing_matched_has_precision_one():
    counts = confusion_counts(MatchMatrix(matches=np.zeros((2, 2)), mode=MatchMode.MULTI_MATCH), _truth(np.eye(2)))

    assert counts.precision == 1.0
    assert counts.recall == 0.0
    assert counts.fn == 2


def test_counts_agree_with_a_cell_by_cell_oracle(rng):
    cells = [np.array(bits, dtype=bool).reshape(3, 3) for bits in itertools.product([0, 1], repeat=9)]
    truths = [cells[int(i)] for i in rng.choice(len(cells), size=24, replace=False)]

    for gt in truths:
        truth = _truth(gt)
        for m in cells:
            counts = confusion_counts(MatchMatrix(matches=m, mode=MatchMode.MULTI_MATCH), truth)
            tp, fp = _brute_counts(m, gt, gt)
            assert (counts.tp, counts.fp, counts.gtp) == (tp, fp, int(gt.sum()))


def test_counts_reject_shape_mismatch():
    matches = MatchMatrix(matches=np.ones((2, 3)), mode=MatchMode.MULTI_MATCH)

    with pytest.raises(DimensionError):
        confusion_counts(matches, _truth(np.eye(2)))


def test_single_best_counts_need_one_match_per_query():
    matches = MatchMatrix(matches=[[1, 0], [1, 1]], mode=MatchMode.MULTI_MATCH)

    with pytest.raises(EvaluationError):
        confusion_counts(matches, _truth(np.eye(2)), MatchMode.SINGLE_BEST)


# --- PR curves ---


def test_hand_curve_multi_match(hand_similarity, identity_gt):
    curve = pr_curve(hand_similarity, identity_gt, MatchMode.MULTI_MATCH)

    np.testing.assert_allclose(curve.thetas, [0.9, 0.8, 0.2, 0.1])
    np.testing.assert_allclose(curve.recall, [0.5, 1.0, 1.0, 1.0])
    np.testing.assert_allclose(curve.precision, [1.0, 1.0, 2 / 3, 0.5])
    assert auprc(curve) == pytest.approx(0.5)
    assert auprc(curve, from_origin=True) == pytest.approx(1.0)


def test_hand_curve_single_best(hand_similarity, identity_gt):
    curve = pr_curve(hand_similarity, identity_gt, MatchMode.SINGLE_BEST)

    np.testing.assert_allclose(curve.thetas, [0.9, 0.8, 0.2, 0.1])
    np.testing.assert_allclose(curve.recall, [0.5, 1.0, 1.0, 1.0])
    np.testing.assert_allclose(curve.precision, [1.0, 1.0, 1.0, 1.0])


def test_single_best_grid_covers_every_eligible_score():
    S = SimilarityMatrix(values=[[0.9, 0.2], [0.5, 0.8], [0.7, 0.1]], metric_tag=MetricTag.REFINED)
    truth = _truth([[1, 0], [0, 1], [0, 0]])

    curve = pr_curve(S, truth, MatchMode.SINGLE_BEST)

    np.testing.assert_allclose(curve.thetas, [0.9, 0.8, 0.7, 0.5, 0.2, 0.1])
    np.testing.assert_allclose(curve.recall, [0.5, 1.0, 1.0, 1.0, 1.0, 1.0])
    np.testing.assert_allclose(curve.precision, [1.0] * 6)


def test_curve_agrees_with_thresholded_counts(random_instance):
    for S, truth in _instances(random_instance):
        for mode in MatchMode:
            curve = pr_curve(S, truth, mode)
            best = best_match_per_query(S).matches
            for theta, precision, recall in zip(curve.thetas, curve.precision, curve.recall):
                m = S.values >= theta
                if mode is MatchMode.SINGLE_BEST:
                    m &= best
                counts = confusion_counts(MatchMatrix(matches=m, mode=mode), truth)
                assert precision == pytest.approx(counts.precision)
                assert recall == pytest.approx(counts.recall)


def test_recall_never_decreases_as_theta_falls(random_instance):
    for S, truth in _instances(random_instance, count=100):
        curve = pr_curve(S, truth)
        assert (np.diff(curve.thetas) < 0).all()
        assert (np.diff(curve.recall) >= 0).all()
        assert 0.0 <= auprc(curve) <= 1.0


def test_separable_scores_give_full_precision(rng):
    gt = rng.uniform(size=(8, 8)) < 0.3
    gt[0, 0] = True
    values = np.where(gt, rng.uniform(0.6, 1.0, gt.shape), rng.uniform(0.0, 0.4, gt.shape))

    curve = pr_curve(SimilarityMatrix(values=values, metric_tag=MetricTag.REFINED), _truth(gt))

    reached = curve.recall < 1.0
    assert (curve.precision[reached] == 1.0).all()
    assert recall_at_precision(curve, 1.0) == 1.0
    assert auprc(curve, from_origin=True) == pytest.approx(1.0)


def test_wider_soft_truth_never_lowers_precision(random_instance):
    for S, truth in _instances(random_instance):
        strict = pr_curve(S, _truth(truth.gt))
        lenient = pr_curve(S, truth)

        np.testing.assert_array_equal(strict.thetas, lenient.thetas)
        np.testing.assert_array_equal(strict.recall, lenient.recall)
        assert (lenient.precision >= strict.precision).all()


def test_auprc_is_invariant_under_increasing_transforms(random_instance):
    for S, truth in _instances(random_instance, count=20):
        squashed = SimilarityMatrix(values=np.exp(3.0 * S.values), metric_tag=MetricTag.REFINED)
        assert auprc(pr_curve(squashed, truth)) == pytest.approx(auprc(pr_curve(S, truth)))


def test_excluded_cells_are_not_thresholded():
    S = SimilarityMatrix(values=[[EXCLUDED, 0.3], [0.7, EXCLUDED]], metric_tag=MetricTag.REFINED)

    curve = pr_curve(S, _truth([[0, 0], [1, 0]]))

    np.testing.assert_allclose(curve.thetas, [0.7, 0.3])
    np.testing.assert_allclose(curve.precision, [1.0, 0.5])


def test_curve_requires_ground_truth_positives(hand_similarity):
    with pytest.raises(EvaluationError, match="no ground-truth positives"):
        pr_curve(hand_similarity, _truth(np.zeros((2, 2))))


def test_curve_rejects_shape_mismatch(hand_similarity):
    with pytest.raises(DimensionError):
        pr_curve(hand_similarity, _truth(np.eye(3)))


def test_threshold_grid_is_capped_and_keeps_the_extremes(rng):
    scores = rng.uniform(size=5000)

    grid = threshold_grid(scores)

    assert grid.size == 1000
    assert grid[0] == scores.max() and grid[-1] == scores.min()
    assert (np.diff(grid) < 0).all()


def test_threshold_grid_small_inputs_keep_every_value():
    np.testing.assert_array_equal(threshold_grid(np.array([0.2, 0.5, 0.2, 0.1])), [0.5, 0.2, 0.1])


def test_auprc_edge_cases():
    flat = PRCurve(thetas=[3, 2, 1], precision=[1, 1, 1], recall=[0, 0.5, 1])
    stacked = PRCurve(thetas=[2, 1], precision=[1, 0.2], recall=[0.4, 0.4])

    assert auprc(flat) == pytest.approx(1.0)
    assert auprc(stacked) == 0.0
    with pytest.raises(EvaluationError):
        auprc(PRCurve(thetas=[], precision=[], recall=[]))


def test_recall_at_precision(hand_similarity, identity_gt):
    curve = pr_curve(hand_similarity, identity_gt)
    noisy = PRCurve(thetas=[2, 1], precision=[0.9, 0.6], recall=[0.5, 1.0])

    assert recall_at_precision(curve, 1.0) == 1.0
    assert recall_at_precision(curve, 0.6) == 1.0
    assert recall_at_precision(noisy, 1.0) is None
    assert recall_at_precision(noisy, 0.95) is None
    assert recall_at_precision(noisy, 0.9) == 0.5
    with pytest.raises(ValueError):
        recall_at_precision(curve, 0.0)


# --- recall@K ---


def _brute_recall_at_k(values, gt, k):
    hits = evaluated = 0
    for j in range(values.shape[1]):
        if not gt[:, j].any():
            continue
        evaluated += 1
        ranked = sorted(range(values.shape[0]), key=lambda i: (-values[i, j], i))[:k]
        hits += any(gt[i, j] and np.isfinite(values[i, j]) for i in ranked)
    return hits / evaluated


def test_recall_at_one_hand_example(hand_similarity, identity_gt):
    result = recall_at_k(hand_similarity, identity_gt, 1)

    assert result.recall == 1.0
    assert (result.evaluated, result.skipped) == (2, 0)


def test_recall_at_k_agrees_with_ranking_oracle(random_instance):
    for S, truth in _instances(random_instance):
        previous = 0.0
        for k in (1, 2, 3):
            result = recall_at_k(S, truth, k)
            expected = _brute_recall_at_k(S.values, truth.gt, k)
            assert result.recall == pytest.approx(expected)
            assert result.recall >= previous
            previous = result.recall


def test_recall_at_k_skips_queries_without_a_match():
    S = SimilarityMatrix(values=[[0.9, 0.5], [0.1, 0.4]], metric_tag=MetricTag.REFINED)
    truth = _truth([[1, 0], [0, 0]])

    result = recall_at_k(S, truth, 1)

    assert (result.recall, result.evaluated, result.skipped) == (1.0, 1, 1)
    with pytest.raises(EvaluationError):
        recall_at_k(S, truth, 1, skip_unmatched=False)


def test_recall_at_k_clamps_k_and_rejects_zero(hand_similarity, identity_gt):
    assert recall_at_k(hand_similarity, identity_gt, 10).recall == 1.0
    with pytest.raises(ValueError):
        recall_at_k(hand_similarity, identity_gt, 0)


def test_recall_at_one_matches_precision_at_full_recall(rng):
    for _ in range(30):
        values = rng.uniform(size=(7, 5))
        gt = rng.uniform(size=values.shape) < 0.2
        gt[rng.integers(0, 7, size=5), np.arange(5)] = True
        S = SimilarityMatrix(values=values, metric_tag=MetricTag.REFINED)
        truth = _truth(gt)

        curve = pr_curve(S, truth, MatchMode.SINGLE_BEST)

        assert recall_at_k(S, truth, 1).recall == pytest.approx(curve.precision[-1])
        assert curve.recall[-1] == pytest.approx(curve.precision[-1])


# --- cell-by-cell reference implementations ---

ORACLE_INSTANCES = 1000
ORACLE_TOLERANCE = 1e-12
ORACLE_TIME_LIMIT = 10.0


def _oracle_best_rows(values):
    best_rows = []
    for j in range(len(values[0])):
        best = -1
        for i in range(len(values)):
            if math.isfinite(values[i][j]) and (best < 0 or values[i][j] > values[best][j]):
                best = i
        best_rows.append(best)
    return best_rows


def _oracle_curve(values, gt, gt_soft, mode):
    """(theta, precision, recall) per unique eligible score, highest first."""
    n_rows, n_cols = len(values), len(values[0])
    eligible = [(i, j) for i in range(n_rows) for j in range(n_cols) if math.isfinite(values[i][j])]
    thetas = sorted({values[i][j] for i, j in eligible}, reverse=True)
    if mode is MatchMode.SINGLE_BEST:
        best = _oracle_best_rows(values)
        candidates = [(best[j], j) for j in range(n_cols) if best[j] >= 0]
        gtp = sum(any(gt[i][j] for i in range(n_rows)) for j in range(n_cols))
    else:
        candidates = eligible
        gtp = sum(gt[i][j] for i in range(n_rows) for j in range(n_cols))

    points = []
    for theta in thetas:
        tp = fp = 0
        for i, j in candidates:
            if values[i][j] < theta:
                continue
            if gt[i][j]:
                tp += 1
            elif not gt_soft[i][j]:
                fp += 1
        points.append((theta, tp / (tp + fp) if tp + fp else 1.0, tp / gtp))
    return points


def _oracle_auprc(points, from_origin=False):
    ordered = sorted(points, key=lambda point: point[2])
    if from_origin:
        ordered = [(None, 1.0, 0.0)] + ordered
    area = 0.0
    for (_, p0, r0), (_, p1, r1) in zip(ordered, ordered[1:]):
        area += (r1 - r0) * (p0 + p1) / 2
    return min(max(area, 0.0), 1.0)


def _with_exclusions(S, rng, rate=0.1) -> SimilarityMatrix:
    excluded = rng.uniform(size=S.shape) < rate
    return SimilarityMatrix(values=np.where(excluded, EXCLUDED, S.values), metric_tag=MetricTag.REFINED)


def test_metrics_agree_with_cell_by_cell_reference(random_instance, rng):
    elapsed = 0.0
    checked = 0
    while checked < ORACLE_INSTANCES:
        S, truth = random_instance()
        S = _with_exclusions(S, rng)
        if not truth.gt.any() or not S.eligible.any():
            continue
        checked += 1
        values, gt, gt_soft = S.values.tolist(), truth.gt.tolist(), truth.gt_soft.tolist()

        started = time.perf_counter()
        curves = {mode: pr_curve(S, truth, mode) for mode in MatchMode}
        areas = {mode: (auprc(curve), auprc(curve, from_origin=True)) for mode, curve in curves.items()}
        recalls = [recall_at_k(S, truth, k) for k in (1, 2, 3)]
        best = best_match_per_query(S)
        single_counts = confusion_counts(best, truth, MatchMode.SINGLE_BEST)
        multi = threshold_match(S, 0.5)
        multi_counts = confusion_counts(multi, truth, MatchMode.MULTI_MATCH)
        elapsed += time.perf_counter() - started

        for mode, curve in curves.items():
            expected = _oracle_curve(values, gt, gt_soft, mode)
            np.testing.assert_array_equal(curve.thetas, [theta for theta, _, _ in expected])
            np.testing.assert_allclose(curve.precision, [p for _, p, _ in expected], rtol=0, atol=ORACLE_TOLERANCE)
            np.testing.assert_allclose(curve.recall, [r for _, _, r in expected], rtol=0, atol=ORACLE_TOLERANCE)
            assert areas[mode][0] == pytest.approx(_oracle_auprc(expected), abs=ORACLE_TOLERANCE)
            assert areas[mode][1] == pytest.approx(_oracle_auprc(expected, True), abs=ORACLE_TOLERANCE)

        for result in recalls:
            expected = _brute_recall_at_k(S.values, truth.gt, result.k)
            assert result.recall == pytest.approx(expected, abs=ORACLE_TOLERANCE)

        best_rows = _oracle_best_rows(values)
        expected_best = np.zeros(S.shape, dtype=bool)
        for j, i in enumerate(best_rows):
            if i >= 0:
                expected_best[i, j] = True
        np.testing.assert_array_equal(best.matches, expected_best)
        for counts, m in ((single_counts, expected_best), (multi_counts, S.values >= 0.5)):
            assert (counts.tp, counts.fp) == _brute_counts(m, truth.gt, truth.gt_soft)
        assert single_counts.gtp == int(truth.gt.any(axis=0).sum())
        assert multi_counts.gtp == int(truth.gt.sum())

    assert elapsed < ORACLE_TIME_LIMIT


# --- aggregation ---


def _report(name, area, full_precision=None) -> MetricReport:
    return MetricReport(
        dataset=name,
        mode="multi_match",
        auprc=area,
        auprc_from_origin=area,
        r_at_p={"1.0": full_precision},
        recall_at_k={"1": area},
        n_db=4,
        n_q=4,
    )


def _by_metric(aggregates):
    return {aggregate.metric: aggregate for aggregate in aggregates}


def test_aggregate_mean_best_worst():
    result = _by_metric(aggregate_runs([_report("a", 0.6), _report("b", 0.8), _report("c", 1.0)]))

    assert result["auprc"].mean == pytest.approx(0.8)
    assert (result["auprc"].best, result["auprc"].worst) == (1.0, 0.6)
    assert result["auprc"].count == 3


def test_aggregate_single_run():
    result = _by_metric(aggregate_runs([_report("a", 0.7, 0.4)]))

    assert result["r_at_p.1.0"].mean == result["r_at_p.1.0"].best == result["r_at_p.1.0"].worst == 0.4


def test_aggregate_excludes_undefined_values():
    result = _by_metric(aggregate_runs([_report("a", 0.5, 0.7), _report("b", 0.5, None)]))

    assert result["r_at_p.1.0"].mean == pytest.approx(0.7)
    assert result["r_at_p.1.0"].undefined_count == 1
    assert result["r_at_p.1.0"].count == 1


def test_aggregate_all_undefined():
    result = _by_metric(aggregate_runs([_report("a", 0.5), _report("b", 0.5)]))

    assert result["r_at_p.1.0"].mean is None
    assert result["r_at_p.1.0"].undefined_count == 2


def test_aggregate_needs_reports():
    with pytest.raises(EvaluationError):
        aggregate_runs([])


def test_aggregates_frame_has_one_row_per_metric():
    frame = aggregates_frame(aggregate_runs([_report("a", 0.6, 0.5), _report("b", 0.8, 0.5)]))

    assert list(frame.columns) == ["metric", "mean", "best", "worst", "count", "undefined_count"]
    assert list(frame["metric"]) == ["auprc", "auprc_from_origin", "r_at_p.1.0", "recall_at_k.1"]


# --- reports ---


def test_evaluate_similarity_report(hand_similarity, identity_gt):
    matches = best_match_per_query(hand_similarity)

    report, curve = evaluate_similarity(
        hand_similarity, identity_gt, MatchMode.MULTI_MATCH, dataset="hand", matches=matches
    )

    assert report.auprc == pytest.approx(0.5)
    assert report.auprc_from_origin == pytest.approx(1.0)
    assert report.r_at_p == {"1.0": 1.0, "0.99": 1.0, "0.95": 1.0}
    assert report.recall_at_k == {"1": 1.0, "5": 1.0, "10": 1.0}
    assert (report.counts.tp, report.counts.fp) == (2, 0)
    assert (report.n_db, report.n_q, report.skipped) == (2, 2, 0)
    assert len(curve) == 4


def test_report_json_round_trip(tmp_path, hand_similarity, identity_gt):
    report, _ = evaluate_similarity(hand_similarity, identity_gt, config={"threshold": "auto"})

    write_report_json(report, tmp_path / "report.json")

    assert read_report_json(tmp_path / "report.json") == report


def test_pr_csv_uses_full_precision(tmp_path, hand_similarity, identity_gt):
    curve = pr_curve(hand_similarity, identity_gt)

    write_pr_csv(curve, tmp_path / "pr.csv")

    lines = (tmp_path / "pr.csv").read_text().splitlines()
    assert lines[0] == "theta,precision,recall"
    assert lines[1] == "0.90000000000000002,1,0.5"
    frame = pd.read_csv(tmp_path / "pr.csv")
    np.testing.assert_array_equal(frame["precision"].to_numpy(), curve.precision)


def test_pr_svg(tmp_path, hand_similarity, identity_gt):
    curve = pr_curve(hand_similarity, identity_gt)

    write_pr_svg(curve, tmp_path / "pr.svg", title="hand & friends")

    svg = (tmp_path / "pr.svg").read_text()
    assert svg.startswith("<?xml")
    assert "<polyline" in svg
    assert "AUPRC 0.500" in svg
    assert "hand &amp; friends" in svg
