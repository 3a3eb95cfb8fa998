class SignRankError(Exception):
    """Base class for every error raised by this library."""
    code = None


class UsageError(SignRankError, ValueError):
    """
    The caller asked for something the library cannot do, such as an
    unknown score function, a parameter outside its domain or a size
    that would make enumeration explode. The inputs must be corrected
    before the call is repeated.
    """
    code = 1


class DataError(SignRankError, ValueError):
    """
    The data itself cannot be processed: zero residuals, ties, series
    that are too short or have no variability. Continuous innovation
    models exclude these almost surely, so they usually point at
    rounded or otherwise preprocessed input.
    """
    code = 2


class NumericError(SignRankError, ArithmeticError):
    """
    A numerical routine failed: quadrature did not reach its tolerance,
    a standardizing denominator vanished or a moment does not exist.
    """
    code = 3


base_errors = {x.code: x for x in (UsageError, DataError, NumericError)}
