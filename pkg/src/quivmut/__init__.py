"""Quiver mutation on finite and infinite quivers.

The most used names are re-exported here; everything else lives in the
submodules.
"""

from .errors import QuiverError
from .properties import Verdict
from .quiver import Quiver, QuiverGenerator, a_infinity, glue, mutate, mutate_word, overfill, restrict
from .sequences import (
    IdentityRay,
    PairBlocks,
    Periodic,
    Prefix,
    Repeat,
    SequenceDescriptor,
    ShiftedRay,
    TriangularPalindromes,
)
from .words import reduce_word, reduction_trace

__all__ = [
    "IdentityRay",
    "PairBlocks",
    "Periodic",
    "Prefix",
    "Quiver",
    "QuiverError",
    "QuiverGenerator",
    "Repeat",
    "SequenceDescriptor",
    "ShiftedRay",
    "TriangularPalindromes",
    "Verdict",
    "a_infinity",
    "glue",
    "mutate",
    "mutate_word",
    "overfill",
    "reduce_word",
    "reduction_trace",
    "restrict",
]

__version__ = "0.1.0"
