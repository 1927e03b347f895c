"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Operands have incompatible dimensions."""


class AsticityError(ValueError):
    """A matrix does not satisfy the 0-asticity required by an operator."""


class NotDefiniteError(ValueError):
    """Metric-matrix semantics require a definite matrix."""


class EnumerationBoundError(RuntimeError):
    """A brute-force path oracle was asked for more work than its guard allows."""


class FormatError(ValueError):
    """A file does not conform to one of the supported text/image formats."""
