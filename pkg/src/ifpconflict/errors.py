"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class IFPSError(ValueError):
    """Base class for domain errors raised by this package."""


class OutOfRange(IFPSError):
    pass


class SimplexViolation(IFPSError):
    pass


class ParseError(IFPSError):
    """Malformed situation input. ``location`` names the line/field at fault."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class ValidationError(IFPSError):
    """Structurally parsed input that breaks a preference-matrix invariant."""

    def __init__(self, report):
        self.report = list(report)
        lines = [str(v) for v in self.report]
        super().__init__(f"{len(lines)} violation(s):\n  " + "\n  ".join(lines))


class UnknownAgent(IFPSError):
    pass


class UnknownIssue(IFPSError):
    pass


class BundleTooSmall(IFPSError):
    pass


class GroupTooSmall(IFPSError):
    pass


class EmptyGroup(IFPSError):
    pass


class InvalidThresholds(IFPSError):
    pass


class InvalidSigma(IFPSError):
    pass


class DegenerateLosses(IFPSError):
    pass


class PlanInvalid(IFPSError):
    pass


class InvalidK(IFPSError):
    pass


class NoProgress(IFPSError):
    """The resolution loop hit its iteration cap; ``trace`` holds the partial run."""

    def __init__(self, message: str, trace):
        self.trace = trace
        super().__init__(message)
