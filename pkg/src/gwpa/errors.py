"""Exception types shared across the package."""

from __future__ import annotations


class GwpaError(Exception):
    """Base class for all errors raised by this package."""


class AmbientMismatchError(GwpaError):
    """Raised when two operands live over different variable lists."""

    def __init__(self, left_vars, right_vars):
        self.left_vars = tuple(left_vars)
        self.right_vars = tuple(right_vars)
        super().__init__(
            "ambient mismatch: operands live over %r and %r"
            % (list(self.left_vars), list(self.right_vars))
        )


class AlgebraMismatchError(GwpaError):
    """Raised when elements of two different algebras are combined."""


class JacobiViolationError(GwpaError):
    """Raised when a candidate bracket matrix fails the Jacobi identity."""

    def __init__(self, triple, jacobiator):
        self.triple = triple
        self.jacobiator = jacobiator
        super().__init__(
            "Jacobi identity fails on generator triple %r with Jacobiator %s"
            % (triple, jacobiator)
        )


class BracketMatrixError(GwpaError):
    """Raised when a bracket matrix is not antisymmetric with zero diagonal."""


class ValidationFailure(GwpaError):
    """Raised when algebra data violates its structural constraints.

    Carries the structured report so callers can render the violations.
    """

    def __init__(self, report):
        self.report = report
        lines = "; ".join(str(v) for v in report.violations)
        super().__init__("invalid algebra data: " + lines)


class ParseError(GwpaError):
    """Raised on malformed polynomial or element text.

    ``position`` is the zero-based offset into the input where parsing failed.
    """

    def __init__(self, message, text, position):
        self.text = text
        self.position = position
        super().__init__("%s (at position %d in %r)" % (message, position, text))


class SpecError(GwpaError):
    """Raised on malformed algebra spec files.

    ``location`` names the offending field, for example ``partials[0].H1``.
    """

    def __init__(self, message, location=None):
        self.location = location
        if location:
            message = "%s: %s" % (location, message)
        super().__init__(message)
