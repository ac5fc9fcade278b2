"""
Error taxonomy for the following-motif toolkit.

Every domain failure raises a subclass of FollowMotifError, which is itself a
ValueError so callers that only care about bad input can catch that.
"""


class FollowMotifError(ValueError):
    """Base class for all domain errors."""


class InvalidSeries(FollowMotifError):
    """A series is empty or holds non-finite samples."""


class OutOfBounds(FollowMotifError):
    """A subsequence runs past the end of its series."""


class InvalidWindow(FollowMotifError):
    """A window (subsequence length) is shorter than two samples."""


class QueryTooLong(FollowMotifError):
    """A distance-profile query is longer than the series it is slid over."""


class InvalidFraction(FollowMotifError):
    """A downsampling fraction outside (0, 1]."""


class WindowTooLarge(FollowMotifError):
    """A window exceeds the length of one of the joined series."""


class DegenerateSeries(FollowMotifError):
    """A series admits no valid comparison (constant, or every candidate excluded)."""


class EmptyMotifSet(FollowMotifError):
    """The percentile threshold left no motif positions to compare."""


class IndexOutOfRange(FollowMotifError):
    """A motif index cannot be expanded inside the series."""


class InvalidParams(FollowMotifError):
    """Generator parameters outside their documented ranges."""


class LengthTooShort(FollowMotifError):
    """A requested synthetic series cannot hold the motif layout."""


class LagTooLarge(FollowMotifError):
    """A cross-correlation lag range does not fit the series."""


class EmptyCounts(FollowMotifError):
    """Metrics requested from an all-zero confusion matrix."""


class EmptyDataset(FollowMotifError):
    """An evaluation was asked to score no pairs."""


class LengthMismatch(FollowMotifError):
    """Predicted and ground-truth masks differ in length."""


class EmptySeries(FollowMotifError):
    """A CSV file held no data rows."""


class ParseError(FollowMotifError):
    """A CSV data row could not be read as numbers."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SeriesFileNotFound(FollowMotifError, FileNotFoundError):
    """An input series file does not exist."""


class ReportWriteError(FollowMotifError, OSError):
    """A report could not be written to disk."""


class UsageError(FollowMotifError):
    """Command-line values that fail validation."""
