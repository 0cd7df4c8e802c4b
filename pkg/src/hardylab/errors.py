"""Exception types shared across the package."""


class HardyLabError(Exception):
    """Base class for all numeric-contract violations."""


class DomainError(HardyLabError):
    """Input outside the documented domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested exactly at a pole."""


class DegeneratePlanError(HardyLabError):
    """Weight plan too short to build a meaningful term table."""


class LengthMismatchError(HardyLabError):
    """Sequence length inconsistent with the weight plan."""


class BracketError(HardyLabError):
    """Root refinement called without a sign change."""


class ConvergenceError(HardyLabError):
    """An adaptive iteration exceeded its hard cap."""


class CacheIOError(HardyLabError):
    """Zero-cache directory could not be read or written."""
