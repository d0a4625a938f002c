"""Exception types shared across the package.

Validation failures derive from ``ValueError``; size guards that tell the
caller to switch to sampling derive from ``RuntimeError``.
"""


class InvalidDistribution(ValueError):
    pass


class MixedModeError(ValueError):
    """Exact rationals and floats were combined in one object."""


class DimensionMismatch(ValueError):
    pass


class RowNotStochastic(ValueError):
    def __init__(self, row, total):
        self.row = row
        self.total = total
        super().__init__(f"row {row} sums to {total}, not 1")


class ParameterOutOfRange(ValueError):
    pass


class NonBinaryBase(ValueError):
    pass


class UnknownLabel(LookupError):
    def __init__(self, label, where="channel"):
        self.label = label
        super().__init__(f"unknown label {label!r} for {where}")


class RequiresExactMode(ValueError):
    pass


class RangeTooLargeForOracle(ValueError):
    pass


class GroupTooLarge(ValueError):
    pass


class MaterializationTooLarge(RuntimeError):
    def __init__(self, cap, size=None):
        self.cap = cap
        self.size = size
        msg = f"materialization needs {size} entries, cap is {cap}" if size else f"cap is {cap}"
        super().__init__(msg + "; use the sampled estimator instead")


class HistogramTooLarge(RuntimeError):
    pass


class ParseError(ValueError):
    def __init__(self, message, line=None, col=None, source="<input>"):
        self.line = line
        self.col = col
        self.source = source
        where = source
        if line is not None:
            where += f":{line}"
            if col is not None:
                where += f":{col}"
        super().__init__(f"{where}: {message}")
