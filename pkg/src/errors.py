"""Exception hierarchy shared by the library and the command line."""


class RibbonComplexError(Exception):
    """Base class for every error raised by this package."""

    kind = "error"
    exit_code = 1


class StructuralError(RibbonComplexError, ValueError):
    """Permutation data does not describe a connected ribbon graph."""

    kind = "structure"


class ValidityError(RibbonComplexError):
    """A graph fails the valence/bridge rules where validity is required."""

    kind = "validity"


class InvalidForestError(RibbonComplexError):
    """An edge set is not a forest of the host graph."""

    kind = "forest"


class ExpansionError(RibbonComplexError):
    """An expansion splits a vertex along something other than two consecutive arcs."""

    kind = "expansion"


class AttachingSpaceError(RibbonComplexError):
    """Slide targets leave the attaching interval or break the order inside an attaching set."""

    kind = "attaching-space"


class PreconditionError(RibbonComplexError):
    kind = "precondition"


class UsageError(RibbonComplexError):
    kind = "usage"


class CapacityError(RibbonComplexError):
    """A request exceeds one of the enumeration caps in ``src.config``."""

    kind = "capacity"
    exit_code = 3


class ConstructionError(RibbonComplexError):
    """A generated rose failed its own surface-type check."""

    kind = "construction"
    exit_code = 2


class ConsistencyError(RibbonComplexError):
    """An internal invariant was violated. Always a programming error."""

    kind = "consistency"
    exit_code = 2


class GraphFileError(RibbonComplexError):
    """Parse failure in a native graph file, addressed by line and column."""

    kind = "parse"

    def __init__(self, message, line=0, column=0):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}" if line else message)
