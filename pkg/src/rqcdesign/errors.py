"""Exception taxonomy shared by the library, CLI, and HTTP service."""


class RqcError(Exception):
    """Base class for all toolkit errors."""


class InvalidSpec(RqcError):
    """Malformed or inconsistent user input (lattice spec, pattern, flags)."""


class DegenerateCutError(RqcError):
    """A cut path that does not produce a usable two-sided bipartition."""


class NoFeasibleCutError(RqcError):
    """Path enumeration produced no cut satisfying the configured filters."""


class CapacityExceededError(RqcError):
    """Requested work exceeds a configured enumeration or memory cap."""
