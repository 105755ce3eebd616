from .GrayImage import GrayImage
from .DescriptorMatrix import DescriptorMatrix
from .LocalFeatureSet import LocalFeatureSet
from .SimilarityMatrix import SimilarityMatrix, MetricTag, EXCLUDED
from .MatchMatrix import MatchMatrix, MatchMode
from .GroundTruth import GroundTruth
from .DatasetBundle import DatasetBundle, SessionMode
from .BundleViolation import BundleViolation
