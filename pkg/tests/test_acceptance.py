"""
End-to-end behaviour on synthetic worlds: condition standardization and
sequence refinement gains, perfect separation, metric identities and
pipeline determinism.
"""

import json

import numpy as np
import pytest

from vprkit.api.cli_utils import run_pipeline
from vprkit.api.descriptor_utils import standardize
from vprkit.api.evaluation_utils import auprc, pr_curve, recall_at_k
from vprkit.api.similarity_utils import seq_refine, similarity_matrix
from vprkit.api.synth_utils import derive_gt, generate_traverse, generate_world
from vprkit.models.config import RunConfig
from vprkit.models.data import DescriptorMatrix, MatchMode
from vprkit.models.similarity import SeqParams
from vprkit.models.synth import Skip, TraverseScript, Visit, WorldConfig

SEEDS = range(10)


def _traverses(world_config, db_script, q_script):
    world = generate_world(world_config)
    return generate_traverse(world, db_script), generate_traverse(world, q_script)


def _stacked(db, q) -> DescriptorMatrix:
    return DescriptorMatrix(
        values=np.vstack([db.descriptors.values, q.descriptors.values]),
        labels=db.descriptors.labels + q.descriptors.labels,
    )


def test_condition_standardization_improves_auprc():
    gains = []
    for seed in SEEDS:
        db, q = _traverses(
            WorldConfig(n_places=50, latent_dim=32, seed=seed),
            TraverseScript(name="db", events=[Visit(start=0, stop=50)], noise_sigma=0.02, stream=1),
            TraverseScript(
                name="q",
                events=[Visit(start=0, stop=50)],
                noise_sigma=0.02,
                condition_bias_norm=2.0,
                condition_scale_range=(0.5, 1.5),
                stream=2,
            ),
        )
        truth = derive_gt(db, q)

        raw = similarity_matrix(db.descriptors, q.descriptors, "cosine")
        stacked = _stacked(db, q)
        joint = standardize(stacked, stacked.labels)
        n_db = len(db)
        corrected = similarity_matrix(
            db.descriptors.with_values(joint.values[:n_db]),
            q.descriptors.with_values(joint.values[n_db:]),
            "cosine",
        )
        gains.append(auprc(pr_curve(corrected, truth)) - auprc(pr_curve(raw, truth)))

    assert sum(gain > 0 for gain in gains) >= 9
    assert np.mean(gains) >= 0.1


def test_sequence_refinement_improves_auprc_under_aliasing():
    wins = 0
    for seed in SEEDS:
        db, q = _traverses(
            WorldConfig(n_places=60, latent_dim=32, aliasing_pairs=10, seed=seed),
            TraverseScript(name="db", events=[Visit(start=0, stop=60)], noise_sigma=0.3, stream=1),
            TraverseScript(name="q", events=[Visit(start=0, stop=60)], noise_sigma=0.3, stream=2),
        )
        truth = derive_gt(db, q)
        single = similarity_matrix(db.descriptors, q.descriptors, "cosine")
        refined = seq_refine(single, SeqParams(length=5))

        wins += auprc(pr_curve(refined, truth)) > auprc(pr_curve(single, truth))

    assert wins >= 9


def test_noiseless_world_is_perfectly_separated():
    db, q = _traverses(
        WorldConfig(n_places=50, latent_dim=64, seed=3),
        TraverseScript(name="db", events=[Visit(start=0, stop=50)], stream=1),
        TraverseScript(name="q", events=[Visit(start=0, stop=50)], stream=2),
    )
    truth = derive_gt(db, q)
    S = similarity_matrix(db.descriptors, q.descriptors, "cosine")

    for mode in MatchMode:
        assert auprc(pr_curve(S, truth, mode), from_origin=True) == pytest.approx(1.0)
    assert recall_at_k(S, truth, 1).recall == 1.0


def test_exploration_frames_break_the_diagonal():
    db, q = _traverses(
        WorldConfig(n_places=50, latent_dim=64, seed=3),
        TraverseScript(name="db", events=[Visit(start=0, stop=50)], stream=1),
        TraverseScript(
            name="q",
            events=[Visit(start=0, stop=20), Skip(start=20, stop=25), Visit(start=25, stop=50)],
            stream=2,
        ),
    )
    truth = derive_gt(db, q)

    assert truth.shape == (50, 50)
    assert not truth.gt[:, 20:25].any()
    assert truth.gt[np.arange(20), np.arange(20)].all()
    assert truth.gt[np.arange(25, 50), np.arange(25, 50)].all()
    result = recall_at_k(similarity_matrix(db.descriptors, q.descriptors, "cosine"), truth, 1)
    assert (result.recall, result.skipped) == (1.0, 5)


def test_recall_at_one_equals_precision_at_full_recall():
    for seed in SEEDS:
        db, q = _traverses(
            WorldConfig(n_places=40, latent_dim=32, aliasing_pairs=5, seed=seed),
            TraverseScript(name="db", events=[Visit(start=0, stop=40)], noise_sigma=0.3, stream=1),
            TraverseScript(name="q", events=[Visit(start=0, stop=40)], noise_sigma=0.3, stream=2),
        )
        truth = derive_gt(db, q)
        S = similarity_matrix(db.descriptors, q.descriptors, "cosine")

        curve = pr_curve(S, truth, MatchMode.SINGLE_BEST)

        assert curve.recall[-1] == curve.precision[-1]
        assert recall_at_k(S, truth, 1).recall == curve.precision[-1]


# --- pipeline ---


def _synth_config(out, **sections) -> RunConfig:
    visit = {"kind": "visit", "start": 0, "stop": 30}
    raw = {
        "seed": 11,
        "out": str(out),
        "dataset": {"name": "synthetic"},
        "synth": {
            "n_places": 30,
            "latent_dim": 16,
            "aliasing_pairs": 2,
            "db": {"name": "db", "events": [visit], "noise_sigma": 0.1, "stream": 1},
            "q": {"name": "q", "events": [visit], "noise_sigma": 0.1, "condition_bias_norm": 1.0, "stream": 2},
        },
    }
    for name, section in sections.items():
        raw[name] = {**raw.get(name, {}), **section}
    return RunConfig.model_validate(raw)


DETERMINISM_CONFIGS = {
    "multi-session": {},
    "single-session": {
        "dataset": {"name": "loop", "session": "single"},
        "synth": {
            "n_places": 30,
            "latent_dim": 16,
            "q": {
                "name": "q",
                "events": [{"kind": "visit", "start": 0, "stop": 20}, {"kind": "loop", "start": 0, "stop": 20}],
                "noise_sigma": 0.1,
                "stream": 2,
            },
        },
        "similarity": {"seq_length": 3},
        "matching": {"mode": "multi_match", "threshold": "auto", "exclusion_halfwidth": 2},
    },
    "standardized": {
        "descriptor": {"reduction": "pca", "reduced_dim": 8},
        "standardization": {"method": "cluster", "clusters": 2},
    },
}


def _snapshot(result) -> dict:
    snapshot = {}
    for name, path in result.files.items():
        if name == "report":
            report = json.loads(path.read_text())
            report.pop("created_at")
            snapshot[name] = report
        else:
            snapshot[name] = path.read_bytes()
    return snapshot


@pytest.mark.parametrize("sections", DETERMINISM_CONFIGS.values(), ids=list(DETERMINISM_CONFIGS))
def test_pipeline_is_deterministic(tmp_path, sections):
    config = _synth_config(tmp_path / "run", **sections)

    first = _snapshot(run_pipeline(config))
    second = _snapshot(run_pipeline(config))

    assert first.keys() >= {"similarity", "heatmap", "matches", "match_pairs", "report", "pr_csv", "pr_svg"}
    assert first == second


def test_pipeline_on_a_noiseless_world(tmp_path):
    visit = {"kind": "visit", "start": 0, "stop": 50}
    config = _synth_config(
        tmp_path / "perfect",
        synth={
            "n_places": 50,
            "latent_dim": 64,
            "aliasing_pairs": 0,
            "db": {"name": "db", "events": [visit], "stream": 1},
            "q": {"name": "q", "events": [visit], "stream": 2},
        },
    )

    result = run_pipeline(config)

    assert result.report.auprc_from_origin == pytest.approx(1.0)
    assert result.report.recall_at_k["1"] == 1.0
    assert (result.report.counts.tp, result.report.counts.fp) == (50, 0)
    assert result.n_matches == 50
