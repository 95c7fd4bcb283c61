"""Exception hierarchy.

Every error carries an ``exit_code`` so the command-line front end can map
failures onto process exit statuses without inspecting messages.
"""


class GraphZetaError(Exception):
    exit_code = 1


class UsageError(GraphZetaError, ValueError):
    """Bad arguments or an incompatible combination of options."""

    exit_code = 2


class GraphSpecError(UsageError):
    """A textual graph spec or graph file could not be parsed."""


class UnsupportedError(UsageError):
    """The operation is not defined for this kind of model."""


class DomainError(GraphZetaError, ValueError):
    """Argument outside the mathematical domain of the operation."""

    exit_code = 3


class InfiniteGraphError(DomainError):
    """A finite-matrix operation was requested for a lattice model."""


class PoleError(DomainError):
    """Evaluation hit a pole; ``location`` is the pole position."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class DivergenceError(DomainError):
    """An integral representation does not converge at the requested point."""


class RegularityError(DomainError):
    """The graph is not regular but the operation needs it to be."""


class ResourceError(GraphZetaError):
    """Input exceeds a hard size cap of a brute-force or exact routine."""

    exit_code = 4
