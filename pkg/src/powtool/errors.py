"""Exception types shared across the toolkit.

Plain ``ValueError``/``ZeroDivisionError`` are used for ordinary contract
violations (bad dimensions, division by zero); the classes below mark
conditions a caller is expected to branch on.
"""


class PowtoolError(Exception):
    """Base class for toolkit-specific errors."""


class NearSingularEvaluation(PowtoolError):
    """A denominator evaluated too close to zero for the requested precision."""


class BudgetExceeded(PowtoolError):
    """A Groebner or search computation hit its configured work cap.

    Signals that the instance is beyond desk scale, not that it is wrong.
    """

    def __init__(self, message, count=None):
        super().__init__(message)
        self.count = count


class EmptyVariety(PowtoolError):
    """An operation that needs a nonempty variety received an empty one."""


class NotOnVariety(PowtoolError):
    """A point claimed to lie on a variety (or subspace) does not."""


class NotContained(PowtoolError):
    """A subspace containment precondition failed."""


class BadEmbedding(PowtoolError):
    """A declared coordinate embedding is not injective or out of range."""


class NotRealEmbedded(PowtoolError):
    """A numeric operation needs real values for every lambda."""


class MarginInfeasible(PowtoolError):
    """The requested clearance margin cannot be met at the stated radii."""


class ParseError(PowtoolError):
    """Problem-file syntax or semantic error, with source location."""

    def __init__(self, message, line=None, col=None):
        loc = ""
        if line is not None:
            loc = f" at line {line}" + (f", column {col}" if col is not None else "")
        super().__init__(message + loc)
        self.line = line
        self.col = col
