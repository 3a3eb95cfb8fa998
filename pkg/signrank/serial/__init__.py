"""
Serial statistics: kernels, their moments, serial sign-and-rank
statistics with exact or approximate scores, and the lag-one
autocorrelations used as randomness tests.
"""
from .kernels import SerialKernel, KernelMoments, kernel_moments
from .statistics import (
    SerialResult, SerialValue, serial_statistic_approx,
    serial_statistic_exact, exact_serial_score, oracle_serial_statistic,
    distinct_tuple_mean, serial_conditional_mean, serial_expected_value,
    standardize_serial, serial_std, serial_result, serial_representation
)
from .autocorrelation import (
    RANK_VARIANTS, SignRankFlavor, rank_autocorrelation,
    ordinary_autocorrelation, signrank_autocorrelation,
    lag1_permutation_moments, hybrid_kernel
)
