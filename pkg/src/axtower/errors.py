"""Exception hierarchy shared by every module."""


class AxError(Exception):
    """Base class for domain errors; the CLI maps these to exit status 1."""


class DivisionByZero(AxError, ZeroDivisionError):
    pass


class FieldMismatch(AxError):
    pass


class ConfigMismatch(AxError):
    pass


class PrecisionExhausted(AxError):
    pass


class UnsupportedConfig(AxError):
    pass


class WindowTooShort(AxError):
    pass


class LeadingCoefficientZero(AxError):
    pass


class SupportViolation(AxError):
    pass


class NoDependenceFound(AxError):
    pass


class DegenerateInput(AxError):
    pass


class ParseError(AxError):
    """Malformed input file or flag (exit status 2)."""
