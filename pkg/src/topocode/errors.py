class TopocodeError(Exception):
    """Base class for all library errors."""


class PreconditionError(TopocodeError, ValueError):
    """An operation was called on input that violates its precondition."""


class CapExceeded(TopocodeError):
    """Exhaustive search refused because the instance is above the size cap."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap
