"""
Simulation of moving-average alternatives and the Monte Carlo power
study of the randomness tests.
"""
from .streams import stream_for
from .ma1 import MA1Config, simulate_ma1, ma1_filter, ma1_residuals
from .power import (
    STATISTICS, STUDY_THETAS, DEFAULT_N, DEFAULT_REPLICATIONS,
    FAST_REPLICATIONS, StatisticSpec, PowerCurve, PowerStudy, power_study,
    parse_statistics
)
