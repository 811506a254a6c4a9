"""Shared exception types."""


class LimitExceeded(RuntimeError):
    """An enumeration or scan would exceed its configured limit."""
