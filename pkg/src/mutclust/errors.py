"""Exception types shared across the package.

Every error carries a stable ``code`` string so the CLI can emit
machine-readable failures without string-matching messages.
"""

from __future__ import annotations


class MutclustError(Exception):
    """Base class for all package errors."""

    code = "error"


class MalformedEdgeLineError(MutclustError):
    """An edge-list line could not be parsed as ``src dst``."""

    code = "malformed-edge-line"

    def __init__(self, line_no: int, line: str, reason: str = "expected two integers"):
        self.line_no = line_no
        self.line = line
        super().__init__(f"line {line_no}: {reason}: {line!r}")


class EmptyGraphError(MutclustError):
    code = "empty-graph"


class EmptyCoreError(MutclustError):
    """Degree filtering (or the SCC step after it) left no nodes."""

    code = "empty-core"


class InfeasibleSpecError(MutclustError):
    """A synthetic-graph budget does not fit the available dyad slots."""

    code = "infeasible-budget"


class UndefinedWolfeRhoError(MutclustError):
    """Wolfe's reciprocity index has a zero denominator for these marginals."""

    code = "wolfe-rho-undefined"


class DegenerateScopeError(MutclustError):
    """A tendency scope (cluster, partition side) is too small to evaluate."""

    code = "degenerate-scope"


class AsymmetricInputError(MutclustError):
    code = "asymmetric-input"


class SizeCapExceededError(MutclustError):
    """A dense construction was requested above its configured size cap."""

    code = "size-cap-exceeded"


class ConvergenceError(MutclustError):
    """Iterative eigensolver ran out of iterations.

    ``residuals`` holds the best per-pair residual norms reached.
    """

    code = "no-convergence"

    def __init__(self, message: str, residuals=None):
        self.residuals = residuals
        super().__init__(message)


class OneSidedEmbeddingError(MutclustError):
    """Sign rounding got a vector whose entries all share one sign.

    The offending vector is kept on ``embedding`` for inspection.
    """

    code = "one-sided-embedding"

    def __init__(self, message: str, embedding=None):
        self.embedding = embedding
        super().__init__(message)


class NoTendencyStructureError(MutclustError):
    """The tendency Laplacian is exactly zero; any split would be arbitrary."""

    code = "no-tendency-structure"


class StrongConnectivityRequiredError(MutclustError):
    code = "not-strongly-connected"


class EmptyClusterError(MutclustError):
    code = "empty-cluster"
