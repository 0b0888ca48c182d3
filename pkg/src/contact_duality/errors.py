"""Exception hierarchy shared by every module."""


class ContactDualityError(Exception):
    """Base class for all errors raised by this package."""


class StructureError(ContactDualityError):
    """Malformed value: bad parse, width mismatch, incompatible operands."""


class Refusal(ContactDualityError):
    """An operation declined to run because a precondition failed.

    Carries the violation report that justified the refusal, when one exists.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class CapExceeded(Refusal):
    """Input is larger than the documented size cap for the operation."""


class IntegrityError(ContactDualityError):
    """An internal certificate failed; indicates a bug, not bad input."""
