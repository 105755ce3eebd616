"""
End-to-end pipeline: describe -> standardize -> compare -> refine -> match -> evaluate.

Every stage runs inside `stage(...)`, so a failure surfaces as
"<stage>: <cause>". All randomness derives from `RunConfig.seed`.
"""

import logging
from pathlib import Path
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from vprkit.api.cli_utils.dataset import load_dataset
from vprkit.api.cli_utils.runner import output_lock, stage
from vprkit.api.core_utils.descriptor_file import write_similarity
from vprkit.api.core_utils.ground_truth import mask_ground_truth
from vprkit.api.descriptor_utils import (
    aggregate_bovw,
    aggregate_vlad,
    cluster_standardize,
    extract_holistic_batch,
    extract_local_batch,
    kmeans_fit,
    pca_apply,
    pca_fit,
    random_projection,
    standardize,
)
from vprkit.api.evaluation_utils import (
    evaluate_similarity,
    write_pr_csv,
    write_pr_svg,
    write_report_json,
)
from vprkit.api.matching_utils import (
    apply_exclusion,
    exclusion_mask,
    match_similarity,
    write_matches,
)
from vprkit.api.similarity_utils import (
    export_heatmap,
    knn_topk,
    rerank_topk,
    seq_refine,
    sequence_descriptors,
    similarity_matrix,
)
from vprkit.core.exceptions import EvaluationError
from vprkit.models.config import DescriptorMethod, Reduction, RunConfig, StandardizationMethod
from vprkit.models.data import (
    DatasetBundle,
    DescriptorMatrix,
    LocalFeatureSet,
    SimilarityMatrix,
)
from vprkit.models.evaluation import MetricReport
from vprkit.models.similarity import SeqParams

logger = logging.getLogger(__name__)


class PipelineResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    out: Path
    files: dict[str, Path]
    threshold: Optional[float] = None
    n_matches: int = 0
    report: Optional[MetricReport] = None


class _Sets(BaseModel):
    """Working descriptor sets; `db` is None in single-session runs."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    db: Optional[DescriptorMatrix]
    q: DescriptorMatrix
    local_db: Optional[list[LocalFeatureSet]] = None
    local_q: Optional[list[LocalFeatureSet]] = None

    @property
    def reference(self) -> DescriptorMatrix:
        return self.q if self.db is None else self.db


def _labels(n: int, label: str) -> list[str]:
    return [label] * n


def _aggregate(features: list[LocalFeatureSet], codebook, method: DescriptorMethod, label: str):
    aggregate = aggregate_bovw if method is DescriptorMethod.BOVW else aggregate_vlad
    rows = np.vstack([aggregate(f, codebook) for f in features])
    return DescriptorMatrix(values=rows, labels=_labels(len(features), label))


def describe(config: RunConfig, bundle: DatasetBundle) -> _Sets:
    method = config.descriptor_method
    spec = config.descriptor
    labels = config.dataset
    if method is DescriptorMethod.IMPORT:
        return _Sets(db=bundle.db_descriptors, q=bundle.q_descriptors)

    if method is DescriptorMethod.PATCHNORM:
        q = extract_holistic_batch(
            bundle.q_images, spec.grid_rows, spec.grid_cols, spec.patch,
            labels=_labels(len(bundle.q_images), labels.q_label),
        )
        db = None
        if bundle.db_images is not None:
            db = extract_holistic_batch(
                bundle.db_images, spec.grid_rows, spec.grid_cols, spec.patch,
                labels=_labels(len(bundle.db_images), labels.db_label),
            )
        return _Sets(db=db, q=q)

    local_q = extract_local_batch(bundle.q_images, spec.local_stride, spec.local_patch, spec.local_dim)
    local_db = None
    if bundle.db_images is not None:
        local_db = extract_local_batch(bundle.db_images, spec.local_stride, spec.local_patch, spec.local_dim)
    reference = local_q if local_db is None else local_db
    samples = np.vstack([f.vectors for f in reference])
    codebook = kmeans_fit(samples, spec.codebook_size, spec.kmeans_iters, config.seed)
    return _Sets(
        db=None if local_db is None else _aggregate(local_db, codebook, method, labels.db_label),
        q=_aggregate(local_q, codebook, method, labels.q_label),
        local_db=local_db,
        local_q=local_q,
    )


def _map_sets(sets: _Sets, transform) -> _Sets:
    return sets.model_copy(
        update={"db": None if sets.db is None else transform(sets.db), "q": transform(sets.q)}
    )


def reduce(config: RunConfig, sets: _Sets) -> _Sets:
    spec = config.descriptor
    if spec.reduction is Reduction.NONE:
        return sets
    if spec.reduction is Reduction.PCA:
        basis = pca_fit(sets.reference, spec.reduced_dim)
        return _map_sets(sets, lambda m: pca_apply(m, basis))
    return _map_sets(
        sets, lambda m: random_projection(m, spec.reduced_dim, spec.reduction.value, config.seed)
    )


def standardize_sets(config: RunConfig, sets: _Sets) -> _Sets:
    """Standardize DB and Q jointly; groups come from the condition labels or from clustering."""
    spec = config.standardization
    if spec.method is StandardizationMethod.NONE:
        return sets

    parts = [sets.q] if sets.db is None else [sets.db, sets.q]
    defaults = ["q"] if sets.db is None else ["db", "q"]
    stacked = DescriptorMatrix(
        values=np.vstack([p.values for p in parts]),
        labels=[label for p, d in zip(parts, defaults) for label in p.group_labels(d)],
    )
    if spec.method is StandardizationMethod.CONDITION:
        result = standardize(stacked, stacked.labels)
    else:
        result = cluster_standardize(stacked, spec.clusters, spec.iters, config.seed)

    if sets.db is None:
        return sets.model_copy(update={"q": result})
    n_db = sets.db.n
    return sets.model_copy(
        update={
            "db": sets.db.with_values(result.values[:n_db]),
            "q": sets.q.with_values(result.values[n_db:]),
        }
    )


def compare(config: RunConfig, sets: _Sets, bundle: DatasetBundle) -> SimilarityMatrix:
    spec = config.similarity
    if spec.sequence_descriptor is not None:
        sets = _map_sets(
            sets,
            lambda m: sequence_descriptors(m, spec.sequence_descriptor_length, spec.sequence_descriptor),
        )
    similarity = similarity_matrix(sets.reference, sets.q, spec.metric)

    if spec.seq_length > 1:
        params = SeqParams(length=spec.seq_length, v_min=spec.v_min, v_max=spec.v_max, v_steps=spec.v_steps)
        similarity = seq_refine(similarity, params)

    if spec.rerank_k is not None:
        local_q = sets.local_q
        local_db = sets.local_db
        if local_q is None:
            d = config.descriptor
            local_q = extract_local_batch(bundle.q_images, d.local_stride, d.local_patch, d.local_dim)
            if bundle.db_images is not None:
                local_db = extract_local_batch(bundle.db_images, d.local_stride, d.local_patch, d.local_dim)
        topk = knn_topk(similarity, min(spec.rerank_k, similarity.shape[0]))
        similarity = rerank_topk(similarity, topk, local_db or local_q, local_q)
    return similarity


def run_pipeline(config: RunConfig) -> PipelineResult:
    with output_lock(config.out) as out:
        files: dict[str, Path] = {}

        with stage("dataset"):
            bundle = load_dataset(config)
            ground_truth = bundle.ground_truth

        with stage("extract"):
            sets = reduce(config, describe(config, bundle))

        with stage("standardize"):
            sets = standardize_sets(config, sets)

        with stage("similarity"):
            similarity = compare(config, sets, bundle)
            spec = config.matching
            if spec.exclusion_halfwidth is not None or spec.online:
                mask = exclusion_mask(similarity.shape, spec.exclusion_halfwidth, spec.online)
                similarity = apply_exclusion(similarity, mask)
                if ground_truth is not None:
                    ground_truth = mask_ground_truth(ground_truth, mask)
            # Evaluate exactly what the exported float32 file holds
            similarity = SimilarityMatrix(
                values=similarity.values.astype(np.float32).astype(np.float64),
                metric_tag=similarity.metric_tag,
            )
            files["similarity"] = out / "similarity.vprd"
            files["heatmap"] = out / "similarity.pgm"
            write_similarity(similarity, files["similarity"])
            export_heatmap(similarity, files["heatmap"])

        with stage("match"):
            matches, theta = match_similarity(similarity, config.matching.mode, config.matching.threshold)
            files["matches"], files["match_pairs"] = write_matches(matches, out)

        report = None
        if config.evaluation.enabled:
            with stage("evaluate"):
                if ground_truth is None:
                    raise EvaluationError("evaluation requires ground truth")
                report, curve = evaluate_similarity(
                    similarity,
                    ground_truth,
                    mode=config.evaluation_mode,
                    dataset=config.dataset.name,
                    k_list=config.evaluation.k_list,
                    p_levels=config.evaluation.p_levels,
                    matches=matches if matches.mode is config.evaluation_mode else None,
                    config=config.model_dump(mode="json"),
                    skip_unmatched=config.evaluation.skip_unmatched,
                )
                files["report"] = out / "report.json"
                files["pr_csv"] = out / "pr.csv"
                files["pr_svg"] = out / "pr.svg"
                write_report_json(report, files["report"])
                write_pr_csv(curve, files["pr_csv"])
                write_pr_svg(curve, files["pr_svg"], title=f"{config.dataset.name} ({config.evaluation_mode.value})")

    return PipelineResult(
        out=out, files=files, threshold=theta, n_matches=int(matches.matches.sum()), report=report
    )
