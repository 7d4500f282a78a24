"""Exception hierarchy shared by every pdagkit module."""


class PdagkitError(Exception):
    """Base class for all errors raised by pdagkit."""


class GraphError(PdagkitError, ValueError):
    """A graph value violates a structural invariant."""


class UnknownNodeError(GraphError, KeyError):
    def __str__(self) -> str:  # KeyError repr-quotes its message otherwise
        return str(self.args[0]) if self.args else ""


class CycleError(GraphError):
    """An operation would close a directed cycle."""


class QueryError(PdagkitError, ValueError):
    """A separation query is malformed (x == y, or an endpoint in z)."""


class ColliderConflictError(PdagkitError):
    """Collider orientation derived both directions for one edge.

    ``triples`` holds the offending ``(x, w, y)`` index triples.
    """

    def __init__(self, message: str, triples=()):
        super().__init__(message)
        self.triples = tuple(triples)


class NotRemovableError(GraphError):
    """The node fails the legitimate-removability test."""


class InextensibleError(PdagkitError):
    """The partially directed graph admits no consistent extension."""


class ExtensionLimitError(PdagkitError):
    """Extension enumeration exceeded its configured bound or cap."""


class OracleError(PdagkitError):
    """An independence oracle could not answer a query."""


class SingularMatrixError(OracleError):
    pass


class InsufficientSamplesError(OracleError):
    pass
