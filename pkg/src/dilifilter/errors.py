"""Exception types shared across the package.

The CLI maps these onto exit codes: ConfigError -> 1, DataError -> 2,
NumericError -> 3.
"""


class DiliFilterError(Exception):
    """Base class for errors raised by this package."""


class ConfigError(DiliFilterError):
    """Invalid configuration or usage (bad option values, unknown ids)."""


class DataError(DiliFilterError):
    """Malformed or inconsistent input data (files, records, labels)."""


class NumericError(DiliFilterError):
    """Numerical failure during fitting or prediction."""
