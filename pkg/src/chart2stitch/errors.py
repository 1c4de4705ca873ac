"""Exception types raised across the compile pipeline."""


class Chart2StitchError(Exception):
    """Base class for all pipeline errors."""


class ChartSyntaxError(Chart2StitchError):
    """The chart document is not valid (bad JSON, wrong types, unknown keys)."""


class RangeError(Chart2StitchError):
    """A category value lies outside the declared axis range."""


class EmptyChart(Chart2StitchError):
    """The chart declares no categories."""


class UnknownTexture(Chart2StitchError):
    """A texture or icon name does not resolve in the library."""


class LayoutOverflow(Chart2StitchError):
    """Laid-out elements exceed the chart bounds at the given dimensions."""


class DegenerateRegion(Chart2StitchError):
    """A fill region has no area."""


class DegeneratePath(Chart2StitchError):
    """A path has fewer than two distinct vertices."""


class DeltaOverflow(Chart2StitchError):
    """A stitch delta exceeds the encodable +-121 unit range."""


class HoopOverflow(Chart2StitchError):
    """A stitch falls outside of the hoop."""


class BadHeader(Chart2StitchError):
    """A stitch file header is missing, short, or inconsistent."""


class TruncatedRecord(Chart2StitchError):
    """A stitch record stream ends without a terminator."""


class UnknownRecordBits(Chart2StitchError):
    """A stitch record uses flag bits this codec does not model."""
