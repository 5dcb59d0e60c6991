"""Exception classes shared across the package.

The CLI maps these onto distinct exit codes, so library code should raise
the most specific class that applies.
"""


class NhdpError(Exception):
    """Base class for all package errors."""


class ConfigError(NhdpError):
    """Invalid configuration value, unreadable input, or malformed file."""


class CorpusFormatError(ConfigError):
    """A corpus or vocabulary file failed to parse; message names the line."""


class CompatibilityError(NhdpError):
    """Mismatched artifacts, e.g. a checkpoint trained at a different truncation."""


class NumericError(NhdpError):
    """A numerical invariant was violated (non-finite or non-positive parameter)."""
