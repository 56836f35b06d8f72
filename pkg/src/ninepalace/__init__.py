"""Integer arithmetic carried out as moves on the nine-palace grid."""
from .grid import GridNumber, NumberPath, Orientation, PointClass, decode_path, encode_path
from .multiplication import DigitSequence
from .trace import StepTrace, TraceStep

__all__ = [
    "DigitSequence",
    "GridNumber",
    "NumberPath",
    "Orientation",
    "PointClass",
    "StepTrace",
    "TraceStep",
    "decode_path",
    "encode_path",
]
__version__ = "0.1.0"
