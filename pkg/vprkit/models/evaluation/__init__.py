from .ConfusionCounts import ConfusionCounts
from .PRCurve import PRCurve
from .MetricReport import MetricReport, MetricAggregate, RecallAtK
