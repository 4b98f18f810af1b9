"""Exception taxonomy shared across the toolkit.

Each subsystem raises a typed error; the CLI maps error families to
documented exit codes (see cli.EXIT_CODES).
"""


class ChartDigError(Exception):
    """Base class for all toolkit errors."""


class InvalidConfig(ChartDigError):
    """A configuration range is empty, inverted, or otherwise unusable."""


class RenderError(ChartDigError):
    """A curve evaluated to a non-finite value inside the axis range."""


class ShapeError(ChartDigError):
    """Tensor shape does not match an operation's contract."""


class GraphError(ChartDigError):
    """backward() called on a value disconnected from any parameter."""


class NumericError(ChartDigError):
    """A non-finite value appeared where the contract requires finite ones."""


class DegenerateCentroid(ChartDigError):
    """Instance mean embedding has (near-)zero norm; centroid undefined."""


class NoPlotArea(ChartDigError):
    """No qualifying plot-area quadrilateral was found in the image."""


class InvalidRange(ChartDigError):
    """Axis range invalid for its scale (e.g. log scale with min <= 0)."""


class EmptyInstance(ChartDigError):
    """An instance pixel set required to be non-empty was empty."""


class VlmUnavailable(ChartDigError):
    """VLM transport failed after exhausting the retry budget."""


class VlmRefusal(ChartDigError):
    """VLM returned an answer that could not be interpreted."""


class MetadataParseError(ChartDigError):
    """Axis-metadata response failed JSON parsing or validation."""

    def __init__(self, message: str, raw_text: str = ""):
        super().__init__(message)
        self.raw_text = raw_text


class DegenerateRange(ChartDigError):
    """y_range <= 0 passed to a range-normalized metric."""


class SizeMismatch(ChartDigError):
    """Predicted and ground-truth rasters have different sizes."""


class MissingGroundTruth(ChartDigError):
    """A prediction has no matching ground-truth dataset entry."""


class CheckpointError(ChartDigError):
    """Checkpoint file is malformed or inconsistent with the architecture."""
