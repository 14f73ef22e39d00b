"""Exception hierarchy shared across the package.

DataError subclasses map to CLI exit code 2, ModelFormatError to 3,
and plain OSError (I/O) to 4.
"""


class MixedNBError(Exception):
    """Base class for all package errors."""


class DataError(MixedNBError):
    """Invalid input data or dataset/schema mismatch."""


class MissingColumnError(DataError):
    pass


class NonBinaryValueError(DataError):
    pass


class MalformedNumberError(DataError):
    pass


class EmptyInputError(DataError):
    pass


class SchemaMismatchError(DataError):
    pass


class LengthMismatchError(DataError):
    pass


class ClassTooSmallError(DataError):
    pass


class SingleClassError(DataError):
    pass


class NoContinuousColumnsError(DataError):
    pass


class DegenerateColumnError(DataError):
    pass


class InvalidParameterError(DataError):
    pass


class ModelFormatError(MixedNBError):
    """Model file is malformed, has unknown fields, or an unsupported version."""
