"""Exception hierarchy shared across the package."""


class GreedyLabError(Exception):
    """Base class for all package errors."""


class GraphFormatError(GreedyLabError):
    """Malformed graph text or invalid graph data."""


class EmptyGraphError(GreedyLabError):
    """Raised when a minimum-degree node is requested but all degrees are zero."""


class IsolatedNodeError(GreedyLabError):
    """Raised when a neighbor of a degree-zero node is requested."""


class EdgeNotPresentError(GreedyLabError):
    """Raised when deleting an edge that is not live."""


class ParameterError(GreedyLabError):
    """Invalid generator or configuration parameters."""


class InfeasibleParametersError(ParameterError):
    """Generator parameters admit no graph (e.g. odd n*d for a regular graph)."""


class ResamplingBudgetError(GreedyLabError):
    """The configuration-model generator failed to produce a simple graph."""


class InvalidBipartitionError(GreedyLabError):
    """The supplied bipartition does not separate all edges."""


class TooLargeError(GreedyLabError):
    """Input exceeds a solver's exhaustive-search guard."""


class NotMaximumError(GreedyLabError):
    """A matching claimed to be maximum admits an augmenting path."""


class NonCanonicalInputError(GreedyLabError):
    """A decomposition input still contains even alternating components."""


class TraceMismatchError(GreedyLabError):
    """An execution trace is inconsistent with the graph it claims to describe."""


class ExplosionError(GreedyLabError):
    """Exhaustive execution enumeration exceeded its limit."""


class NonGreedyStrategyError(GreedyLabError):
    """An adversary that requires greedy play was given an isolating strategy."""


class InconsistentTranscriptError(GreedyLabError):
    """A game transcript contradicts the graph it claims to have produced."""
