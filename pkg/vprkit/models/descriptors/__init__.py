from .Codebook import Codebook
from .StandardizationStats import StandardizationStats, GroupStats
from .PcaBasis import PcaBasis
