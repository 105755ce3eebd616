import numpy as np

from vprkit.models.data import BundleViolation, DatasetBundle, SessionMode


def _descriptor_problems(side: str, descriptors) -> list[BundleViolation]:
    problems = []
    values = np.asarray(descriptors.values)
    if not np.isfinite(values).all():
        problems.append(
            BundleViolation(code="nan-values", message=f"{side} descriptors contain NaN or Inf")
        )
    labels = descriptors.labels
    if labels is not None and len(labels) != values.shape[0]:
        problems.append(
            BundleViolation(
                code="label-length",
                message=f"{side} has {len(labels)} labels for {values.shape[0]} descriptors",
            )
        )
    return problems


def _image_problems(side: str, images) -> list[BundleViolation]:
    for index, image in enumerate(images):
        pixels = np.asarray(image.pixels)
        if not np.isfinite(pixels).all() or pixels.min() < 0 or pixels.max() > 1:
            return [
                BundleViolation(
                    code="image-range",
                    message=f"{side} image {index} has intensities outside [0, 1]",
                )
            ]
    return []


def validate_bundle(bundle: DatasetBundle) -> list[BundleViolation]:
    """
    Check a bundle against the dataset invariants.

    Returns one violation per broken invariant; an empty list means valid.
    Never raises, so externally assembled bundles can be diagnosed.
    """
    report: list[BundleViolation] = []
    has_db = bundle.db_images is not None or bundle.db_descriptors is not None
    has_q = bundle.q_images is not None or bundle.q_descriptors is not None

    if bundle.session_mode is SessionMode.MULTI and not has_db:
        report.append(BundleViolation(code="db-missing", message="multi-session bundle has no database set"))
    if bundle.session_mode is SessionMode.SINGLE and has_db:
        report.append(
            BundleViolation(
                code="db-in-single-session",
                message="single-session bundles compare Q with itself and must not carry a database set",
            )
        )
    if not has_q:
        report.append(BundleViolation(code="q-missing", message="bundle has no query set"))

    for side, images, descriptors in (
        ("db", bundle.db_images, bundle.db_descriptors),
        ("q", bundle.q_images, bundle.q_descriptors),
    ):
        if descriptors is not None:
            report.extend(_descriptor_problems(side, descriptors))
        if images is not None:
            report.extend(_image_problems(side, images))
        if images is not None and descriptors is not None and len(images) != descriptors.values.shape[0]:
            report.append(
                BundleViolation(
                    code="count-mismatch",
                    message=f"{side} has {len(images)} images but {descriptors.values.shape[0]} descriptors",
                )
            )

    if bundle.db_descriptors is not None and bundle.q_descriptors is not None:
        d_db = np.asarray(bundle.db_descriptors.values).shape[1]
        d_q = np.asarray(bundle.q_descriptors.values).shape[1]
        if d_db != d_q:
            report.append(
                BundleViolation(
                    code="dimension-mismatch",
                    message=f"db descriptors have d={d_db}, query descriptors d={d_q}",
                )
            )

    truth = bundle.ground_truth
    if truth is not None:
        gt = np.asarray(truth.gt, dtype=bool)
        gt_soft = np.asarray(truth.gt_soft, dtype=bool)
        expected = (bundle.n_db, bundle.n_q)
        if None not in expected and gt.shape != expected:
            report.append(
                BundleViolation(
                    code="gt-shape",
                    message=f"GT shape {gt.shape} does not match (|DB|, |Q|) = {expected}",
                )
            )
        if gt.shape != gt_soft.shape:
            report.append(
                BundleViolation(
                    code="gt-shape",
                    message=f"GT shape {gt.shape} differs from GT_soft shape {gt_soft.shape}",
                )
            )
        elif (gt & ~gt_soft).any():
            count = int((gt & ~gt_soft).sum())
            report.append(
                BundleViolation(
                    code="soft-containment",
                    message=f"{count} GT cells are not marked in GT_soft",
                )
            )
    return report
