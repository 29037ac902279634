"""Exception hierarchy.

Negative answers of the decision procedures (not chordal, no consecutive
ordering, not extendible, ...) are raised as subclasses of
:class:`NoSolution`; malformed input raises subclasses of
:class:`ParseError`.
"""


class IntervalExtError(Exception):
    """Base class for every error raised by this package."""


class ParseError(IntervalExtError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class MalformedLine(ParseError):
    pass


class SelfLoop(ParseError):
    pass


class DuplicateEdge(ParseError):
    pass


class VertexOutOfRange(ParseError):
    pass


class MalformedRational(ParseError):
    pass


class NoSolution(IntervalExtError):
    """A definitive negative answer."""


class NotChordal(NoSolution):
    """The graph has an induced cycle of length at least four.

    ``witness`` is a vertex whose earlier neighbours in the LexBFS order do
    not form a clique.
    """

    def __init__(self, witness):
        super().__init__(f"graph is not chordal (witness vertex {witness})")
        self.witness = witness


class Infeasible(NoSolution):
    """No ordering makes every restricting set consecutive."""


class Incompatible(NoSolution):
    """No reordering of the PQ-tree extends the given relation."""


class NotInterval(NoSolution):
    pass


class NotExtendible(NoSolution):
    pass


class Unplaceable(NotExtendible):
    """Some clique-point has no admissible position on the line."""

    def __init__(self, clique):
        super().__init__(f"clique {clique} cannot be placed")
        self.clique = clique


class InvalidPartial(IntervalExtError, ValueError):
    """Pre-drawn intervals do not represent the induced subgraph."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class NoSimRep(NoSolution):
    pass


class BoundExceeded(IntervalExtError):
    pass


class InvalidInstance(IntervalExtError, ValueError):
    pass


class LimitExceeded(IntervalExtError):
    """An enumeration would produce more items than allowed."""
