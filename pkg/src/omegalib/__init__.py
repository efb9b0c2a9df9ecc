"""Subshifts and cellular automata: limit sets, asymptotic sets and related decisions."""

from .errors import (DomainError, InconsistencyError, OmegaError, RangeError, ResourceError,
                     SpecError, SymbolError, UnderflowError)
from .symbols import Alphabet, Word
from .sofic import LabeledGraph
from .sft import ForbiddenSpec
from .blockmap import BlockRule
from .orbits import EpConfiguration

__all__ = [
    "Alphabet", "Word", "LabeledGraph", "ForbiddenSpec", "BlockRule", "EpConfiguration",
    "OmegaError", "SpecError", "SymbolError", "RangeError", "UnderflowError", "DomainError",
    "ResourceError", "InconsistencyError",
]
