"""Error types shared across the package."""


class ValidationError(ValueError):
    """A configuration value violates one of the model's constraints.

    The message always names the offending field and the constraint so the
    CLI can surface it verbatim.
    """
