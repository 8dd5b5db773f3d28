"""Exception types shared across the toolkit."""


class DoatrackError(Exception):
    """Base class for all toolkit-specific errors."""


class FeasibilityExhausted(DoatrackError):
    """Rejection sampling failed to place a separated direction set.

    Signals an over-constrained request (too many points for the
    requested minimum separation), not a transient failure.
    """


class ParseError(DoatrackError):
    """Malformed row in a track/observation CSV file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateEntry(ParseError):
    """Repeated (track_id, frame_index) pair in the input."""


class UnknownTrack(DoatrackError, KeyError):
    """Requested track id does not exist in the TrackSet."""


class GridMismatch(DoatrackError):
    """Two containers that must share a FrameGrid do not."""


class UndefinedOnEmptyTP(DoatrackError):
    """A metric that averages over true positives has none to average.

    Reported upstream as an absent value, never coerced to 0.
    """


class UndefinedOnEmptyGroundTruth(DoatrackError):
    """MOTA is undefined when the ground truth has no detections."""


class InvalidConfig(DoatrackError, ValueError):
    """A scenario/tracker configuration violates its invariants."""


class MissingTags(DoatrackError):
    """Oracle tracker received observations without source tags."""


class InvalidK(DoatrackError, ValueError):
    """Splitter fan-out exceeds the frames available on a track."""


class InsufficientData(DoatrackError):
    """Bootstrap aggregation needs at least two defined values."""
