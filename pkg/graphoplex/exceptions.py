"""
Exception hierarchy
"""


class GraphoplexError(Exception):
    """Base class for every error raised by graphoplex"""


class UsageError(GraphoplexError):
    """Bad command line or bad run configuration"""


class InvalidGroup(GraphoplexError):
    """Group presentation fails validation"""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid group presentation")


class MateIncompatible(GraphoplexError):
    pass


class NotSupported(GraphoplexError):
    pass


class MalformedGraph(GraphoplexError):
    pass


class LoopContraction(GraphoplexError):
    pass


class QuasiLoop(GraphoplexError):
    pass


class IsActualEdge(GraphoplexError):
    pass


class UnsupportedFilter(GraphoplexError):
    pass


class BasisMismatch(GraphoplexError):
    """A boundary term fell outside the target basis"""


class BasisIncomplete(GraphoplexError):
    """A pairing block is missing classes"""


class SpeciesMismatch(GraphoplexError):
    pass


class NotDegreeTwo(GraphoplexError):
    pass


class DimensionMismatch(GraphoplexError):
    pass


class ResourceLimit(GraphoplexError):
    """Configured size limit exceeded; not a verification failure"""
