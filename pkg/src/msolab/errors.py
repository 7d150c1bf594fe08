"""Exception types shared across the package."""


class MsolabError(Exception):
    """Base class for all msolab errors."""


class InputError(MsolabError):
    """Invalid user input: malformed JSON, zeros outside the disk, bad config.

    The CLI maps this to exit code 2.
    """


class TruncationError(MsolabError):
    """A requested operation cannot meet its truncation-tail cap.

    Carries the expansion degree that would be needed so callers can retry.
    """

    def __init__(self, message, required_degree=None):
        super().__init__(message)
        self.required_degree = required_degree


class AdmissibilityError(MsolabError):
    """A vector violates the shift-admissibility precondition."""


class DimensionError(MsolabError):
    """Operator/vector dimensions do not conform."""
