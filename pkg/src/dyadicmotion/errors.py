"""Shared exception types.

Two broad families matter to callers: validation failures (bad inputs,
malformed files, configuration mistakes) and numeric failures during
training or sampling. The CLI maps the former to exit code 1 and the
latter to exit code 2.
"""


class DyadicMotionError(Exception):
    """Base class for all package errors."""


class ValidationError(DyadicMotionError):
    """Bad input, configuration, or file content."""


class ParseError(ValidationError):
    """Malformed record in a line-delimited file."""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class IntegrityError(ValidationError):
    """Record content violates a corpus invariant (duplicate id, bad vocabulary...)."""


class SchemaError(ValidationError):
    """A structured record is missing required fields."""


class ConfigError(ValidationError):
    """Invalid configuration or incompatible component wiring."""


class ShapeError(ValidationError):
    """Array dimensions do not match the declared contract."""


class DomainError(ValidationError):
    """Value outside the mathematical domain of an operation."""


class DegenerateInputError(DomainError):
    """Input is rank-deficient or otherwise degenerate."""


class NumericError(DyadicMotionError):
    """Non-finite values appeared during training or sampling."""
