from .main import main, run
from .sysfile import SystemFile, emit_system, parse_system, resolve_system

__all__ = ["main", "run", "SystemFile", "emit_system", "parse_system", "resolve_system"]
