from .WorldConfig import WorldConfig
from .World import World
from .TraverseScript import TraverseScript, TraverseEvent, Visit, Stop, Loop, Skip
from .Traverse import Traverse, UNMAPPED
