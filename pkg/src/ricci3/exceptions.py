"""Exception types raised by the toolkit.

Every error that callers are expected to handle has its own class so that
batch drivers can distinguish bad input from genuine mathematical
counterexamples.
"""


class RicciError(Exception):
    """Base class for all toolkit errors."""


# graph construction / queries

class SelfLoopError(RicciError):
    """An edge joins a vertex to itself."""


class DuplicateEdgeError(RicciError):
    """The same unordered pair appears twice in an edge list."""


class DisconnectedError(RicciError):
    """The input graph is not connected."""


class DegreeOverflowError(RicciError):
    """A vertex exceeds the requested maximum degree."""


class NotACycleError(RicciError):
    """The given vertex sequence is not a cycle of the graph."""


class DisconnectedSubsetError(RicciError):
    """The vertex subset does not induce a connected subgraph."""


class DegreeTooHighError(RicciError):
    """State functions require maximum degree at most 3."""


class NotGeodesicError(RicciError):
    """The given path is not geodesic."""


# serialization

class Graph6Error(RicciError):
    """Base class for graph6 decoding errors."""


class MalformedHeaderError(Graph6Error):
    """The graph6 byte string has a bad or missing size header."""


class TruncatedBitsError(Graph6Error):
    """The graph6 body has the wrong length or nonzero padding."""


# curvature

class EpsilonOutOfRangeError(RicciError):
    """epsilon is outside [0, 1/Deg] for an endpoint."""


class MassMismatchError(RicciError):
    """The two measures do not carry equal total mass."""


class NotAdjacentError(RicciError):
    """Edge curvature was requested for a non-adjacent pair."""


class WrongSchemeError(RicciError):
    """The operation requires a different weight scheme."""


class NoConvergenceError(RicciError):
    """The curvature limit did not certify within the halving budget.

    Piecewise linearity guarantees termination, so seeing this error
    signals an implementation bug rather than a hard instance.
    """


# families / classification

class BadParamError(RicciError):
    """A generator parameter is out of range or unknown."""


class SelfValidationError(RicciError):
    """A generated graph failed its own validity checks.

    Points at a defect in the shipped catalog data, not at the caller.
    """


class NotClassifiableError(RicciError):
    """classify() requires maximum degree <= 3, curvature >= 0, diameter >= 6."""


# enumeration / solving

class ResourceExceededError(RicciError):
    """An exhaustive run was asked to go beyond the configured bound."""


class SingularSystemError(RicciError):
    """The harmonic system has no unique solution (ill-posed boundary)."""
