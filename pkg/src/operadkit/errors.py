class OperadError(Exception):
    pass


class TruncationExceeded(OperadError):
    """A composite or action would land above the truncation level."""

    def __init__(self, level, bound, what="composite"):
        super().__init__(f"{what} at level {level} exceeds truncation bound {bound}")
        self.level = level
        self.bound = bound


class SchemaError(OperadError):
    """Input data does not match the expected JSON layout."""


class BlowupError(OperadError):
    """An enumeration would exceed its configured cap."""
