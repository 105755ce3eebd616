from .RunConfig import (
    RunConfig,
    DatasetSpec,
    SynthSpec,
    DescriptorSpec,
    StandardizationSpec,
    SimilaritySpec,
    MatchingSpec,
    EvaluationSpec,
    DatasetSource,
    DescriptorMethod,
    Reduction,
    StandardizationMethod,
)
