"""Exception hierarchy. Every error carries a stable ``code`` string that the
CLI reports in its JSON error object."""


class BellError(Exception):
    code = "ERROR"

    def __init__(self, message="", code=None):
        super().__init__(message)
        if code is not None:
            self.code = code

    @property
    def message(self):
        return self.args[0] if self.args else ""


class DomainError(BellError, ValueError):
    code = "DOMAIN_ERROR"


class NoRootError(DomainError):
    code = "NO_ROOT"


class IrrationalLeadingRoot(DomainError):
    code = "IRRATIONAL_LEADING_ROOT"


class NonInvertibleError(DomainError):
    code = "NON_INVERTIBLE"


class DegenerateError(DomainError):
    code = "DEGENERATE"


class InvalidDistribution(DomainError):
    code = "INVALID_DISTRIBUTION"


class InsufficientDataError(DomainError):
    code = "INSUFFICIENT_DATA"


class ParseError(BellError, ValueError):
    """Malformed input documents. ``code`` distinguishes the failure kind."""

    code = "PARSE_ERROR"
