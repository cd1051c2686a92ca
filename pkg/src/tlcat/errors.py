"""Exceptions shared across the package."""


class InvariantViolation(RuntimeError):
    """An invariant check failed; ``witness`` pins down the failing input."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness
