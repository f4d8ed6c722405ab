"""Exception hierarchy shared by the package."""


class PrymError(Exception):
    """Base class for all errors raised by prymvol."""


class GraphError(PrymError, ValueError):
    """Malformed graph, unknown ids, or a connectivity precondition failed."""


class CoverError(PrymError, ValueError):
    """A double cover could not be built or fails a required invariant."""


class ParseError(PrymError, ValueError):
    """Input JSON or polynomial text could not be parsed."""


class NotDivisibleError(PrymError, ArithmeticError):
    """Exact polynomial division left a nonzero remainder."""


class InapplicableError(PrymError):
    """A computation route was requested for a cover class it does not support."""


class GenerationError(PrymError, ValueError):
    """Random cover generation parameters are infeasible."""
