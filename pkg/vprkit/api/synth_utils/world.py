"""
Synthetic worlds.

Every place gets a unit-norm latent appearance vector. Aliased places copy
another place's latent plus a tiny perturbation, which reproduces perceptual
aliasing (distinct places that look almost identical).
"""

import logging

import numpy as np

from vprkit.models.synth import World, WorldConfig

logger = logging.getLogger(__name__)

ALIAS_PERTURBATION_NORM = 0.01


def unit_rows(matrix: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(matrix, axis=1, keepdims=True)
    return matrix / np.where(norms > 0, norms, 1.0)


def generate_world(config: WorldConfig) -> World:
    """
    Draw the latents of `config.n_places` places.

    Draw order: latents (row-major), the place permutation used to pick
    aliasing pairs, then one perturbation per pair. Same seed, same world.
    """
    rng = np.random.default_rng(config.seed)
    latents = unit_rows(rng.standard_normal((config.n_places, config.latent_dim)))

    order = rng.permutation(config.n_places)
    aliased = []
    for pair in range(config.aliasing_pairs):
        source, copy = int(order[2 * pair]), int(order[2 * pair + 1])
        perturbation = rng.standard_normal(config.latent_dim)
        perturbation *= ALIAS_PERTURBATION_NORM / np.linalg.norm(perturbation)
        latents[copy] = latents[source] + perturbation
        latents[copy] /= np.linalg.norm(latents[copy])
        aliased.append((min(source, copy), max(source, copy)))

    logger.debug(
        f"Generated world: {config.n_places} places, dim {config.latent_dim}, "
        f"{len(aliased)} aliased pairs"
    )
    return World(config=config, latents=latents, aliased=tuple(sorted(aliased)))
