"""Exception hierarchy shared by every module."""

from __future__ import annotations


class GBraidError(Exception):
    """Base class for all library errors."""


class ParseError(GBraidError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column or 1}: {message}"
        super().__init__(message)


class TheoryError(GBraidError, ValueError):
    """Invalid theory configuration (duplicate tag, unknown tag, ...)."""


class NotRegular(GBraidError):
    def __init__(self, tags):
        self.tags = tuple(sorted(tags))
        super().__init__("NotRegular: tags without R2: " + ", ".join(self.tags))


class NotNormal(GBraidError):
    def __init__(self, tags=()):
        self.tags = tuple(sorted(tags))
        detail = ", ".join(self.tags) if self.tags else "none"
        super().__init__("NotNormal: no tag dominates the theory (candidates: %s)" % detail)


class NotPure(GBraidError):
    def __init__(self, images=None):
        self.images = images
        super().__init__("NotPure: permutation is %s" % (list(images) if images else "not identity"))


class StrandMismatch(GBraidError, ValueError):
    pass


class MoveNotAllowed(GBraidError):
    pass


class VerificationError(GBraidError):
    """A trace or log failed to replay."""


class PatternMismatch(VerificationError):
    pass


class OutputMismatch(VerificationError):
    pass


class Cancelled(GBraidError):
    pass
