"""
This module holds every error the library raises. They all derive from
`SignRankError` through one of the three categories, whose ``code`` is
the exit status used by the command line interface.
"""
from .baseerrors import (
    SignRankError, UsageError, DataError, NumericError, base_errors
)
from .common import (
    ZeroResidualError, TiedResidualsError, LengthMismatchError,
    SampleTooSmallError, ZeroVarianceError, MissingCellError, InvalidCellError,
    QuadratureError, DegenerateStatisticError, InfiniteMeanError,
    NonFiniteStatisticError, UnknownScoreError, UnknownStatisticError,
    InvalidDensityError, EnumerationSizeError, RankOutOfRangeError,
    QuantileDomainError, NoSignInformationError, FlavorMismatchError,
    InvalidParameterError, CommandLineError, MissingDependencyError
)


def exit_code_for(error):
    """
    Converts an exception into the process exit code it should produce.

    :param error: the exception that stopped the command.
    :return: the exit code, or re-raises ``error`` if it is unexpected.
    """
    if isinstance(error, SignRankError):
        # Categories define the code; subclasses never override it.
        for code, cls in base_errors.items():
            if isinstance(error, cls):
                return code

    # Unreadable or unwritable paths are a usage problem, not a crash.
    if isinstance(error, OSError):
        return UsageError.code

    raise error
