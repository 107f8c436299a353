"""Exception types shared across the toolkit."""


class NCMCError(Exception):
    """Base class for domain errors."""


class ComplexityError(NCMCError):
    """Surface too small to carry the requested structure."""


class InadmissibleError(NCMCError):
    """Weight vector violates the matching conditions."""


class WeightBoundExceeded(NCMCError):
    """A tracing or twisting operation exceeded the configured weight cap."""


class TruncationError(NCMCError):
    """An exact answer was required but the weight-bounded universe was hit."""


class LiteralError(NCMCError):
    """Unparseable curve or surface literal."""
