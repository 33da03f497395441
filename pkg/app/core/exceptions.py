"""
Custom exceptions for the Hopf-Galois freeness toolkit.
"""
from typing import Optional, Dict, Any


class HopfGaloisError(Exception):
    """Base exception for all toolkit errors.

    Carries a descriptive message plus a context dictionary with the
    indices, labels or vectors that identify the failure.
    """

    def __init__(self, message: str, context: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.context = context or {}

    def __str__(self) -> str:
        if self.context:
            context_str = ", ".join(f"{k}={v}" for k, v in self.context.items())
            return f"{self.message} (Context: {context_str})"
        return self.message


class DimensionMismatchError(HopfGaloisError):
    """Raised when vector or matrix sizes do not agree."""

    def __init__(self, message: str, expected: Any = None, actual: Any = None):
        context = {}
        if expected is not None:
            context["expected"] = expected
        if actual is not None:
            context["actual"] = actual
        super().__init__(message, context)


class FixtureValidationError(HopfGaloisError):
    """Raised when a group, context or lattice fails an invariant.

    The ``identity`` names the violated law (e.g. ``associativity``,
    ``automorphism_multiplicative``) so a corrupt fixture can be traced.
    """

    def __init__(self, message: str, identity: str, **details: Any):
        context: Dict[str, Any] = {"identity": identity}
        context.update(details)
        super().__init__(message, context)
        self.identity = identity


class BudgetExceededError(HopfGaloisError):
    """Raised when a search is asked to run beyond its size budget."""

    def __init__(self, message: str, order: int, budget: int):
        super().__init__(message, {"order": order, "budget": budget})


class SingularSystemError(HopfGaloisError):
    """Raised when an exact linear system has no unique solution."""


class UnverifiedElementError(HopfGaloisError):
    """Raised when an element of L[N] is used as a Hopf element without a fixedness check."""


class InstabilityError(HopfGaloisError):
    """Raised when a lattice is not carried into itself by the group action."""

    def __init__(self, message: str, sigma: str, vector: Any):
        super().__init__(message, {"sigma": sigma, "vector": vector})
        self.sigma = sigma
        self.vector = vector


class PreconditionError(HopfGaloisError):
    """Raised when an operation's documented precondition does not hold."""


class ClaimFailureError(HopfGaloisError):
    """Raised when a transfer claim fails.

    Keeps the failing element index, the claim name, a witness and the
    partial report so the failure can be localized.
    """

    def __init__(self, message: str, index: int, claim: str, witness: Any = None,
                 report: Any = None):
        super().__init__(message, {"index": index, "claim": claim, "witness": witness})
        self.index = index
        self.claim = claim
        self.witness = witness
        self.report = report


class InternalConsistencyError(HopfGaloisError):
    """Raised when a state that valid inputs cannot produce is reached."""
