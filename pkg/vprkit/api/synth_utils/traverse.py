"""
Traverse generation.

A traverse script is expanded event by event into a frame sequence, then
every frame receives the appearance of its place under the traverse's
condition (per-dimension scale and bias) plus Gaussian sensor noise.
"""

import logging

import numpy as np

from vprkit.api.synth_utils.world import unit_rows
from vprkit.core.exceptions import DimensionError
from vprkit.models.data import DescriptorMatrix
from vprkit.models.synth import (
    UNMAPPED,
    Loop,
    Skip,
    Stop,
    Traverse,
    TraverseScript,
    Visit,
    World,
)

logger = logging.getLogger(__name__)


def expand_events(script: TraverseScript) -> np.ndarray:
    """Place id of every frame, in event order (-1 for exploration frames)."""
    frames: list[int] = []
    for event in script.events:
        if isinstance(event, Visit):
            if event.stop <= event.start:
                continue
            count = int(np.ceil((event.stop - event.start) / event.step))
            positions = np.floor(event.start + np.arange(count) * event.step).astype(np.int64)
            frames.extend(int(p) for p in positions if p < event.stop)
        elif isinstance(event, Stop):
            frames.extend([event.place] * event.duration)
        elif isinstance(event, Loop):
            frames.extend(range(event.start, event.stop))
        elif isinstance(event, Skip):
            frames.extend([UNMAPPED] * max(event.stop - event.start, 0))
    return np.asarray(frames, dtype=np.int64)


def _condition(script: TraverseScript, dim: int, rng: np.random.Generator):
    if script.condition_bias:
        bias = np.asarray(script.condition_bias, dtype=np.float64)
    elif script.condition_bias_norm:
        direction = rng.standard_normal(dim)
        bias = script.condition_bias_norm * direction / np.linalg.norm(direction)
    else:
        bias = np.zeros(dim)

    if script.condition_scale:
        scale = np.asarray(script.condition_scale, dtype=np.float64)
    elif script.condition_scale_range is not None:
        low, high = script.condition_scale_range
        scale = rng.uniform(low, high, size=dim)
    else:
        scale = np.ones(dim)

    for name, vector in (("condition_bias", bias), ("condition_scale", scale)):
        if vector.shape != (dim,):
            raise DimensionError(f"{name} has {vector.shape[0]} entries, latent_dim is {dim}")
    return scale, bias


def generate_traverse(world: World, script: TraverseScript) -> Traverse:
    """
    Render `script` in `world`.

    The generator is seeded with (world seed, script stream); draws happen in
    the order: condition bias, condition scale, then per frame an exploration
    latent (unmapped frames only) followed by its noise vector.
    """
    n_places, dim = world.latents.shape
    out_of_range = [p for p in script.referenced_places() if p >= n_places]
    if out_of_range:
        raise ValueError(
            f"script '{script.name}' references place {out_of_range[0]} "
            f"but the world has {n_places} places"
        )

    rng = np.random.default_rng(np.random.SeedSequence([world.config.seed, script.stream]))
    scale, bias = _condition(script, dim, rng)
    place_ids = expand_events(script)

    frames = np.empty((place_ids.shape[0], dim), dtype=np.float64)
    for index, place in enumerate(place_ids):
        if place == UNMAPPED:
            latent = unit_rows(rng.standard_normal((1, dim)))[0]
        else:
            latent = world.latents[place]
        noise = script.noise_sigma * rng.standard_normal(dim)
        frames[index] = scale * latent + bias + noise

    logger.debug(f"Traverse '{script.name}': {len(place_ids)} frames")
    descriptors = DescriptorMatrix(values=frames, labels=[script.name] * len(place_ids))
    return Traverse(descriptors=descriptors, place_ids=place_ids)
