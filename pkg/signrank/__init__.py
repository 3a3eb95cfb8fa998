"""
Serial and nonserial sign-and-rank statistics for zero-median white
noise, the randomness tests built from them and a Monte Carlo harness
for their power against moving-average alternatives.
"""
from . import version, errors, distributions, scores, serial, simulation
from .distributions import (
    DensityKind, InnovationDensity, make_density, parse_density_spec
)
from .signsranks import (
    SignRankDecomposition, decompose, enumerate_null_invariant,
    iter_null_invariant
)
from .scores import (
    ScoreFlavor, ScoreGeneratingFunction, ScoreTable, approx_score,
    exact_score, builtin_scores, build_score_table
)
from .nonserial import (
    RegressionDesign, NonserialResult, Moments, nonserial_statistic,
    exact_moments, conditional_mean, unconditional_variance,
    standardize_unconditional, standardize_conditional, location_statistic,
    nonserial_test, median_regression_central_sequence,
    nonserial_representation
)
from .serial import (
    SerialKernel, kernel_moments, serial_statistic_approx,
    serial_statistic_exact, exact_serial_score, standardize_serial,
    rank_autocorrelation, ordinary_autocorrelation,
    signrank_autocorrelation, lag1_permutation_moments
)
from .testing import TestResult, two_sided_test
from .simulation import (
    MA1Config, simulate_ma1, ma1_filter, ma1_residuals, stream_for,
    PowerCurve, PowerStudy, power_study
)

__version__ = version.__version__

__all__ = [
    'DensityKind', 'InnovationDensity', 'make_density', 'parse_density_spec',
    'SignRankDecomposition', 'decompose', 'enumerate_null_invariant',
    'iter_null_invariant',
    'ScoreFlavor', 'ScoreGeneratingFunction', 'ScoreTable', 'approx_score',
    'exact_score', 'builtin_scores', 'build_score_table',
    'RegressionDesign', 'NonserialResult', 'Moments', 'nonserial_statistic',
    'exact_moments', 'conditional_mean', 'unconditional_variance',
    'standardize_unconditional', 'standardize_conditional',
    'location_statistic', 'nonserial_test',
    'median_regression_central_sequence', 'nonserial_representation',
    'SerialKernel', 'kernel_moments', 'serial_statistic_approx',
    'serial_statistic_exact', 'exact_serial_score', 'standardize_serial',
    'rank_autocorrelation', 'ordinary_autocorrelation',
    'signrank_autocorrelation', 'lag1_permutation_moments',
    'TestResult', 'two_sided_test',
    'MA1Config', 'simulate_ma1', 'ma1_filter', 'ma1_residuals', 'stream_for',
    'PowerCurve', 'PowerStudy', 'power_study',
    'errors', 'distributions', 'scores', 'serial', 'simulation',
]
