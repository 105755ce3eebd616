from pathlib import Path

import numpy as np
import pytest

from vprkit.api.core_utils import dilate
from vprkit.models.data import GroundTruth, MetricTag, SimilarityMatrix
from vprkit.models.synth import TraverseScript, Visit, WorldConfig

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def hand_similarity():
    """The 2x2 worked example: S=[[0.9,0.1],[0.2,0.8]] with GT = I."""
    return SimilarityMatrix(values=[[0.9, 0.1], [0.2, 0.8]], metric_tag=MetricTag.COSINE)


@pytest.fixture
def identity_gt():
    eye = np.eye(2, dtype=bool)
    return GroundTruth(gt=eye, gt_soft=eye)


@pytest.fixture
def small_world_config():
    return WorldConfig(n_places=10, latent_dim=16, aliasing_pairs=0, seed=7)


@pytest.fixture
def straight_script():
    """One noiseless pass over places 0..9 under the identity condition."""
    return TraverseScript(name="db", events=[Visit(start=0, stop=10, step=1)], noise_sigma=0.0)


@pytest.fixture
def mini_dir():
    return DATA_DIR / "mini"


@pytest.fixture
def random_instance(rng):
    """Factory for random S in [0,1] with random GT and GT_soft dilated by (1,1)."""

    def make(max_size: int = 10, density: float = 0.2):
        rows = int(rng.integers(1, max_size + 1))
        cols = int(rng.integers(1, max_size + 1))
        values = rng.uniform(0.0, 1.0, size=(rows, cols))
        gt = rng.uniform(size=(rows, cols)) < density
        truth = GroundTruth(gt=gt, gt_soft=dilate(gt, (1, 1)))
        return SimilarityMatrix(values=values, metric_tag=MetricTag.REFINED), truth

    return make
