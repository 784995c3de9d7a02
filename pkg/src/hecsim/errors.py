class InvalidParameterError(ValueError):
    """A parameter lies outside the range the model accepts."""


class DomainError(ValueError):
    """A distribution function was evaluated outside its support."""
