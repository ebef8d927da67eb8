"""Exception types shared across the package."""


class HypothesisError(Exception):
    """An operation's stated hypothesis does not hold for the given input."""


class SizeLimitError(HypothesisError):
    """An exact enumeration would exceed the configured size budget."""
