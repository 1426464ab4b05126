"""Shared exception types."""


class DataError(ValueError):
    """Invalid input data: malformed files, constraint violations, bad labels."""


class TrainingError(DataError):
    """Training could not proceed or produced a non-finite loss."""
