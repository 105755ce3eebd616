"""
Dataset loading for pipeline runs: synthetic traverses, image directories
or descriptor files, plus ground truth when available.
"""

import logging

from vprkit.api.core_utils.bundle import validate_bundle
from vprkit.api.core_utils.descriptor_file import read_descriptors
from vprkit.api.core_utils.ground_truth import read_ground_truth
from vprkit.api.core_utils.pgm import load_image_dir
from vprkit.api.synth_utils import derive_gt, generate_traverse, generate_world
from vprkit.core.exceptions import VprError
from vprkit.models.config import DatasetSource, RunConfig
from vprkit.models.data import DatasetBundle, SessionMode
from vprkit.models.synth import Traverse, WorldConfig

logger = logging.getLogger(__name__)


def synth_traverses(config: RunConfig) -> tuple[Traverse, Traverse]:
    """DB and Q traverses of the `[synth]` section; in single-session runs both are Q."""
    synth = config.synth
    world = generate_world(
        WorldConfig(
            n_places=synth.n_places,
            latent_dim=synth.latent_dim,
            aliasing_pairs=synth.aliasing_pairs,
            seed=config.seed,
        )
    )
    q = generate_traverse(world, synth.q)
    if config.dataset.session is SessionMode.SINGLE:
        return q, q
    return generate_traverse(world, synth.db), q


def synth_bundle(config: RunConfig) -> DatasetBundle:
    db, q = synth_traverses(config)
    single = config.dataset.session is SessionMode.SINGLE
    return DatasetBundle(
        name=config.dataset.name,
        session_mode=config.dataset.session,
        db_descriptors=None if single else db.descriptors,
        q_descriptors=q.descriptors,
        ground_truth=derive_gt(db, q, config.evaluation.soft_radius),
    )


def _file_bundle(config: RunConfig) -> DatasetBundle:
    spec = config.dataset
    single = spec.session is SessionMode.SINGLE
    if spec.source is DatasetSource.IMAGES:
        q_images = tuple(load_image_dir(spec.q))
        db_images = None if single else tuple(load_image_dir(spec.db))
        fields = {"q_images": q_images, "db_images": db_images}
        n_q = len(q_images)
        n_db = n_q if single else len(db_images)
    else:
        q = read_descriptors(spec.q)
        db = None if single else read_descriptors(spec.db)
        fields = {"q_descriptors": q, "db_descriptors": db}
        n_q = q.n
        n_db = n_q if single else db.n

    ground_truth = None
    if spec.gt is not None:
        ground_truth = read_ground_truth(
            spec.gt, (n_db, n_q), config.evaluation.soft_radius, spec.gt_soft
        )
    return DatasetBundle(
        name=spec.name, session_mode=spec.session, ground_truth=ground_truth, **fields
    )


def check_bundle(bundle: DatasetBundle) -> DatasetBundle:
    violations = validate_bundle(bundle)
    if violations:
        details = "; ".join(f"{v.code}: {v.message}" for v in violations)
        raise VprError(f"invalid dataset '{bundle.name}': {details}")
    return bundle


def load_dataset(config: RunConfig) -> DatasetBundle:
    if config.dataset.source is DatasetSource.SYNTH:
        bundle = synth_bundle(config)
    else:
        bundle = _file_bundle(config)

    check_bundle(bundle)
    logger.info(f"Dataset '{bundle.name}': |DB|={bundle.n_db}, |Q|={bundle.n_q}")
    return bundle
