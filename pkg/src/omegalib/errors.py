"""Exception hierarchy shared by every module."""

import os


class OmegaError(Exception):
    """Base class for all library errors."""


class SpecError(OmegaError, ValueError):
    """Malformed input: bad parameters, inconsistent arithmetic, syntax."""

    def __init__(self, message, line=None, key=None):
        self.line = line
        self.key = key
        prefix = ""
        if line is not None:
            prefix += f"line {line}: "
        if key is not None:
            prefix += f"{key}: "
        super().__init__(prefix + message)


class SymbolError(SpecError):
    """A symbol name that is not part of the alphabet."""


class RangeError(OmegaError, IndexError):
    """Window or cell indices out of range."""


class UnderflowError(OmegaError, ValueError):
    """A word is shorter than the rule diameter."""


class DomainError(OmegaError):
    """A partial rule was consulted outside of its domain."""

    def __init__(self, message, window=None):
        self.window = window
        super().__init__(message)


class ResourceError(OmegaError):
    """Presentation or configuration growth exceeded the memory cap.

    ``partial`` carries whatever report had been built when the cap hit.
    """

    def __init__(self, message, partial=None):
        self.partial = partial
        super().__init__(message)


class InconsistencyError(OmegaError):
    """An internal post-condition failed. Never silently swallowed."""


DEFAULT_MEM_CAP_MB = 512


def mem_cap_bytes():
    raw = os.environ.get("OMEGALIB_MEM_CAP_MB")
    if not raw:
        return DEFAULT_MEM_CAP_MB * 1024 * 1024
    try:
        mb = float(raw)
    except ValueError:
        raise SpecError(f"OMEGALIB_MEM_CAP_MB must be a number, got {raw!r}")
    return int(mb * 1024 * 1024)


# rough footprint of one stored arc (three python ints in a tuple plus a dict slot)
ARC_BYTES = 64


def arc_cap():
    return max(1, mem_cap_bytes() // ARC_BYTES)
