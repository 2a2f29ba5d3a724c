"""Exception types shared across the pipeline stages."""

from __future__ import annotations


class CoreadmapError(Exception):
    """Base class for all errors raised by this package."""


class RecordFormatError(CoreadmapError):
    """A malformed record in an input file; names the line and field."""

    def __init__(self, path: str, line_no: int, field: str, reason: str):
        self.path = path
        self.line_no = line_no
        self.field = field
        self.reason = reason
        super().__init__(f"{path}:{line_no}: bad field {field!r}: {reason}")


class NoDocumentsSelectedError(CoreadmapError):
    """No document met the readership threshold."""

    def __init__(self, threshold: int, max_observed: int):
        self.threshold = threshold
        self.max_observed = max_observed
        super().__init__(
            f"no documents meet threshold {threshold} "
            f"(maximum observed occurrence count: {max_observed})"
        )


class InsufficientDocumentsError(CoreadmapError):
    """Too few documents for the requested computation."""


class ElbowNotFoundError(CoreadmapError):
    """No cluster count satisfied the elbow rule; carries the variance curve."""

    def __init__(self, curve: dict[int, float], floor: float, ceiling: float):
        self.curve = dict(curve)
        self.floor = floor
        self.ceiling = ceiling
        super().__init__(
            f"no cluster count reaches explained variance >= {floor} with the "
            f"next increment < {ceiling}; curve: {curve}"
        )


class DegenerateEmbeddingError(CoreadmapError):
    """Every ordination restart collapsed to a configuration with undefined stress."""


class AreaCapacityError(CoreadmapError):
    """A topic-area bubble cannot contain its document glyphs at any packing."""


class EmptyClusterTextError(CoreadmapError):
    """Cluster labeling got no usable text from any member document."""
