"""Exception types shared across the package."""


class StructuralError(ValueError):
    """Mismatch of dimension, scalar mode, chart, degree or twist parity."""


class MetricError(ValueError):
    """Bad metric: singular, non-symmetric, or irrational volume factor."""


class FormSyntaxError(ValueError):
    """Form-expression parse failure, with source position."""

    def __init__(self, message, line, column):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class ConfigError(ValueError):
    """Invalid or inconsistent run configuration."""
