"""Concrete errors, grouped by the category they belong to"""
from .baseerrors import UsageError, DataError, NumericError


# region Data errors


class ZeroResidualError(DataError):
    """Occurs when some residual is exactly zero and has no sign."""
    def __init__(self, indices):
        super().__init__(
            'Residuals at positions {} are exactly zero; signs are '
            'undefined'.format(list(indices)))

        self.indices = list(indices)


class TiedResidualsError(DataError):
    """Occurs when two or more residuals share the same value."""
    def __init__(self, values):
        super().__init__(
            'Tied residual values {}; ranks are undefined without a '
            'tie-breaking rule'.format(list(values)))

        self.values = list(values)


class LengthMismatchError(DataError):
    """
    Occurs when the series, the regression constants and the score
    table do not agree on the sample size.
    """
    def __init__(self, expected, got):
        super().__init__(
            'Length mismatch ({} when {} was expected)'.format(got, expected))

        self.expected = expected
        self.got = got


class SampleTooSmallError(DataError):
    """Occurs when a statistic needs more observations than were given."""
    def __init__(self, n, minimum):
        super().__init__(
            'Sample size {} is too small, at least {} observations are '
            'required'.format(n, minimum))

        self.n = n
        self.minimum = minimum


class ZeroVarianceError(DataError):
    """Occurs when every value of a series is the same."""
    def __init__(self):
        super().__init__('The series has zero sample variance')


class MissingCellError(DataError):
    """Occurs when an input CSV file has an empty or missing cell."""
    def __init__(self, column, line):
        super().__init__(
            'Missing value for column {!r} on line {}'.format(column, line))

        self.column = column
        self.line = line


class InvalidCellError(DataError):
    """Occurs when an input CSV cell is not a number."""
    def __init__(self, column, line, value):
        super().__init__(
            'Value {!r} for column {!r} on line {} is not a number'
            .format(value, column, line))

        self.column = column
        self.line = line
        self.value = value


# endregion

# region Numeric errors


class QuadratureError(NumericError):
    """
    Occurs when adaptive quadrature could not reach the requested
    absolute tolerance.
    """
    def __init__(self, achieved, requested, what=''):
        super().__init__(
            'Quadrature{} did not converge (estimated error {:.3g} when '
            '{:.3g} was requested)'.format(
                ' for ' + what if what else '', achieved, requested))

        self.achieved = achieved
        self.requested = requested


class DegenerateStatisticError(NumericError):
    """Occurs when a standardizing denominator is zero."""
    def __init__(self, what):
        super().__init__(
            'Cannot standardize {}: the asymptotic variance is zero'
            .format(what))

        self.what = what


class InfiniteMeanError(NumericError):
    """Occurs when asking for the mean of a density that has none."""
    def __init__(self, density, f0=None):
        super().__init__(
            'The density {} has no finite mean'.format(density))

        self.density = density
        self.f0 = f0


class NonFiniteStatisticError(NumericError):
    """Occurs when a statistic to be tested is infinite or NaN."""
    def __init__(self, value):
        super().__init__(
            'Cannot test a non-finite statistic ({!r})'.format(value))

        self.value = value


# endregion

# region Usage errors


class UnknownScoreError(UsageError):
    """Occurs when a builtin score function is requested by a wrong name."""
    def __init__(self, name, known):
        super().__init__(
            'Unknown score function {!r}; known names are {}'.format(
                name, ', '.join(sorted(known))))

        self.name = name


class UnknownStatisticError(UsageError):
    """Occurs when a registered test statistic is requested by a wrong name."""
    def __init__(self, name, known):
        super().__init__(
            'Unknown statistic {!r}; known names are {}'.format(
                name, ', '.join(known)))

        self.name = name


class InvalidDensityError(UsageError):
    """Occurs when an innovation density cannot be constructed."""
    def __init__(self, reason):
        super().__init__('Invalid density: {}'.format(reason))
        self.reason = reason


class EnumerationSizeError(UsageError):
    """Occurs when exhaustive enumeration is requested for a large sample."""
    def __init__(self, n, maximum):
        super().__init__(
            'Cannot enumerate the null distribution for n={} '
            '(1 <= n <= {} is required)'.format(n, maximum))

        self.n = n
        self.maximum = maximum


class RankOutOfRangeError(UsageError):
    """Occurs when a rank is not in 1..n."""
    def __init__(self, rank, n):
        super().__init__(
            'Rank {} is out of range for a sample of size {}'.format(rank, n))

        self.rank = rank
        self.n = n


class QuantileDomainError(UsageError):
    """Occurs when a quantile is requested outside the open unit interval."""
    def __init__(self, u):
        super().__init__(
            'Quantiles are only defined on (0, 1), got {!r}'.format(u))

        self.u = u


class NoSignInformationError(UsageError):
    """
    Occurs when the location statistic is requested for a score function
    whose two half-integrals coincide, so the signs carry no weight.
    """
    def __init__(self):
        super().__init__(
            'The score function has equal integrals over both halves of '
            '(0, 1); the location statistic is degenerate')


class FlavorMismatchError(UsageError):
    """
    Occurs when a sign-and-rank autocorrelation flavor is paired with a
    density other than its own hybrid.
    """
    def __init__(self, flavor, density):
        super().__init__(
            'The {} flavor requires its hybrid density, got {}'.format(
                flavor, density))

        self.flavor = flavor
        self.density = density


class InvalidParameterError(UsageError):
    """Occurs when a numeric parameter is outside its valid range."""
    def __init__(self, name, value, reason):
        super().__init__(
            'Invalid {} ({!r}): {}'.format(name, value, reason))

        self.name = name
        self.value = value


class CommandLineError(UsageError):
    """Occurs when the command line arguments cannot be parsed."""
    def __init__(self, message):
        super().__init__(message)


class MissingDependencyError(UsageError):
    """Occurs when an optional dependency is needed but not installed."""
    def __init__(self, package, feature):
        super().__init__(
            '{} requires the optional "{}" package'.format(feature, package))

        self.package = package


# endregion
