import enum
from pathlib import Path
from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from vprkit.models.data import MatchMode, SessionMode
from vprkit.models.synth import TraverseScript


class Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class DatasetSource(str, enum.Enum):
    SYNTH = "synth"
    IMAGES = "images"
    DESCRIPTORS = "descriptors"


class DescriptorMethod(str, enum.Enum):
    PATCHNORM = "patchnorm"
    BOVW = "bovw"
    VLAD = "vlad"
    IMPORT = "import"


class Reduction(str, enum.Enum):
    NONE = "none"
    PCA = "pca"
    GAUSSIAN = "gaussian"
    SIGN = "sign"


class StandardizationMethod(str, enum.Enum):
    NONE = "none"
    CONDITION = "condition"
    CLUSTER = "cluster"


class DatasetSpec(Section):
    """Where DB/Q come from. `db`/`q` are image directories or VPRD files depending on `source`."""

    name: str = "dataset"
    source: DatasetSource = DatasetSource.SYNTH
    session: SessionMode = SessionMode.MULTI
    db: Optional[Path] = None
    q: Optional[Path] = None
    gt: Optional[Path] = None
    gt_soft: Optional[Path] = None
    db_label: str = "db"
    q_label: str = "q"


class SynthSpec(Section):
    n_places: int = Field(default=50, ge=2)
    latent_dim: int = Field(default=64, ge=2)
    aliasing_pairs: int = Field(default=0, ge=0)
    db: TraverseScript = Field(default_factory=lambda: TraverseScript(name="db", stream=1))
    q: TraverseScript = Field(default_factory=lambda: TraverseScript(name="q", stream=2))


class DescriptorSpec(Section):
    method: Optional[DescriptorMethod] = None
    grid_rows: int = Field(default=4, ge=1)
    grid_cols: int = Field(default=4, ge=1)
    patch: int = Field(default=8, ge=1)
    local_stride: int = Field(default=4, ge=1)
    local_patch: int = Field(default=8, ge=1)
    local_dim: Optional[int] = Field(default=None, ge=1)
    codebook_size: int = Field(default=16, ge=1)
    kmeans_iters: int = Field(default=20, ge=2)
    reduction: Reduction = Reduction.NONE
    reduced_dim: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _reduction_dim(self):
        if self.reduction is not Reduction.NONE and self.reduced_dim is None:
            raise ValueError(f"reduction '{self.reduction.value}' needs reduced_dim")
        return self


class StandardizationSpec(Section):
    method: StandardizationMethod = StandardizationMethod.NONE
    clusters: int = Field(default=2, ge=1)
    iters: int = Field(default=20, ge=2)


class SimilaritySpec(Section):
    metric: Literal["cosine", "neg_euclidean"] = "cosine"
    seq_length: int = Field(default=1, ge=1)
    v_min: float = Field(default=0.8, gt=0)
    v_max: float = Field(default=1.2, gt=0)
    v_steps: int = Field(default=5, ge=1)
    sequence_descriptor: Optional[Literal["concat", "mean", "delta"]] = None
    sequence_descriptor_length: int = Field(default=1, ge=1)
    rerank_k: Optional[int] = Field(default=None, ge=1)


class MatchingSpec(Section):
    mode: MatchMode = MatchMode.SINGLE_BEST
    threshold: Optional[Union[float, Literal["auto"]]] = None
    exclusion_halfwidth: Optional[int] = Field(default=None, ge=0)
    online: bool = False


class EvaluationSpec(Section):
    enabled: bool = True
    mode: Optional[MatchMode] = None
    soft_radius: tuple[int, int] = (0, 0)
    k_list: list[int] = Field(default_factory=lambda: [1, 5, 10])
    p_levels: list[float] = Field(default_factory=lambda: [1.0, 0.99, 0.95])
    skip_unmatched: bool = True

    @model_validator(mode="after")
    def _check(self):
        if min(self.soft_radius) < 0:
            raise ValueError("soft_radius entries must be >= 0")
        if any(k < 1 for k in self.k_list):
            raise ValueError("k_list entries must be >= 1")
        if any(not 0 < p <= 1 for p in self.p_levels):
            raise ValueError("p_levels must lie in (0, 1]")
        return self


class RunConfig(Section):
    """
    One pipeline run: data, descriptor, standardization, similarity,
    matching and evaluation settings plus seed and output directory.
    """

    seed: int = Field(default=0, ge=0, lt=2**64)
    out: Path = Path("out")
    dataset: DatasetSpec = Field(default_factory=DatasetSpec)
    synth: Optional[SynthSpec] = None
    descriptor: DescriptorSpec = Field(default_factory=DescriptorSpec)
    standardization: StandardizationSpec = Field(default_factory=StandardizationSpec)
    similarity: SimilaritySpec = Field(default_factory=SimilaritySpec)
    matching: MatchingSpec = Field(default_factory=MatchingSpec)
    evaluation: EvaluationSpec = Field(default_factory=EvaluationSpec)

    @model_validator(mode="after")
    def _legal_combinations(self):
        source = self.dataset.source
        single = self.dataset.session is SessionMode.SINGLE
        if (self.matching.exclusion_halfwidth is not None or self.matching.online) and not single:
            raise ValueError("matching exclusion requires dataset.session = 'single'")
        if self.similarity.rerank_k is not None and source is not DatasetSource.IMAGES:
            raise ValueError("re-ranking needs local features, i.e. dataset.source = 'images'")
        if source is DatasetSource.SYNTH and self.synth is None:
            raise ValueError("dataset.source = 'synth' needs a [synth] section")

        method = self.descriptor.method
        if source is DatasetSource.IMAGES and method is DescriptorMethod.IMPORT:
            raise ValueError("image datasets need a descriptor method other than 'import'")
        if source is not DatasetSource.IMAGES and method not in (None, DescriptorMethod.IMPORT):
            raise ValueError(f"descriptor method '{method.value}' needs dataset.source = 'images'")

        if source is not DatasetSource.SYNTH:
            if self.dataset.q is None:
                raise ValueError("dataset.q is required")
            if not single and self.dataset.db is None:
                raise ValueError("dataset.db is required for multi-session runs")
        if self.similarity.seq_length % 2 == 0 or self.similarity.sequence_descriptor_length % 2 == 0:
            raise ValueError("sequence lengths must be odd")
        return self

    @property
    def descriptor_method(self) -> DescriptorMethod:
        if self.descriptor.method is not None:
            return self.descriptor.method
        if self.dataset.source is DatasetSource.IMAGES:
            return DescriptorMethod.PATCHNORM
        return DescriptorMethod.IMPORT

    @property
    def evaluation_mode(self) -> MatchMode:
        return self.evaluation.mode or self.matching.mode

    def referenced_paths(self) -> list[Path]:
        paths = [self.dataset.db, self.dataset.q, self.dataset.gt, self.dataset.gt_soft]
        if self.dataset.session is SessionMode.SINGLE:
            paths[0] = None
        return [path for path in paths if path is not None]
