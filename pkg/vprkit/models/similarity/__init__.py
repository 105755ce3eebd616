from .TopKResult import TopKResult
from .SeqParams import SeqParams
