"""Exception hierarchy shared by all modules."""


class BFError(Exception):
    """Base class for every error raised by :mod:`bfredholm`."""


class InputError(BFError, ValueError):
    """Malformed input: wrong shapes, non-finite entries, bad indices."""


class DomainError(BFError, ValueError):
    """Operation requested outside its domain (e.g. trace off the ideal)."""


class NumericalInstabilityError(BFError):
    """A computed object failed its verification residuals.

    Attributes
    ----------
    residuals : dict
        Residual name to value, as measured when verification failed.
    """

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = dict(residuals or {})


class ConvergenceError(BFError):
    """An iteration or a refinement ladder did not converge."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class ConsistencyError(BFError):
    """Two quantities that must agree by construction did not."""


class EquivalenceViolation(ConsistencyError):
    """The two evaluation routes of a classification disagreed."""

    def __init__(self, message, direct=None, witness=None):
        super().__init__(message)
        self.direct = direct
        self.witness = witness


class BoundaryAmbiguousError(BFError):
    """A symbol zero lies within tolerance of the unit circle."""

    def __init__(self, message, roots=None):
        super().__init__(message)
        self.roots = list(roots or [])
