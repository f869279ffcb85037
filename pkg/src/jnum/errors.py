"""Exception hierarchy shared by all jnum modules."""


class JnumError(Exception):
    """Base class for every error raised by the library."""


class SchemaError(JnumError):
    """Input document does not follow the expected layout."""


class ConsistencyError(JnumError):
    """Input parses but violates a data invariant."""

    def __init__(self, message, label=None):
        super().__init__(message)
        self.label = label


class UnknownLabel(JnumError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class AsymmetricMatrix(ConsistencyError):
    pass


class PositiveSelfIntersection(ConsistencyError):
    pass


class DTooSmall(JnumError, ValueError):
    pass


class DimensionMismatch(JnumError, ValueError):
    pass


class UnknownEffectivity(JnumError):
    """Unloading stalled: nothing is refuted but some class is undecided.

    ``blocking`` maps exceptional labels to the undecided classes.
    ``lam`` is filled in by the supercandidate loop when available.
    """

    def __init__(self, blocking, divisor=None, lam=None):
        self.blocking = dict(blocking)
        self.divisor = divisor
        self.lam = lam
        super().__init__(self._message())

    def _message(self):
        parts = ", ".join(f"{k}: {list(v)}" for k, v in sorted(self.blocking.items()))
        where = f" at lambda={self.lam}" if self.lam is not None else ""
        return f"effectivity undecided{where} for {parts}"

    def at(self, lam):
        self.lam = lam
        self.args = (self._message(),)
        return self


class IterationCapExceeded(JnumError):
    pass


class NoPositiveMultiplicity(JnumError, ValueError):
    pass


class NotACandidate(JnumError, ValueError):
    pass


class InsufficientBaseWindow(JnumError, ValueError):
    pass


class CertificateError(JnumError, AssertionError):
    """A certificate failed exact re-verification (indicates a bug)."""
