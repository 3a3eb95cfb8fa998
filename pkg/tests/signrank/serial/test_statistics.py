"""
tests for signrank.serial.statistics
"""
import itertools
import math

import numpy as np
import pytest
from scipy import stats

from signrank import errors
from signrank.distributions import make_density
from signrank.nonserial import pseudo_uniform_ranks
from signrank.scores import ScoreGeneratingFunction, builtin_scores
from signrank.serial import (
    SerialKernel, serial_statistic_approx, serial_statistic_exact,
    exact_serial_score, oracle_serial_statistic, distinct_tuple_mean,
    serial_conditional_mean, serial_expected_value, standardize_serial,
    serial_result, serial_representation, hybrid_kernel
)
from signrank.signsranks import decompose

WILCOXON = SerialKernel.product(builtin_scores('wilcoxon-phi'),
                                builtin_scores('wilcoxon-phi'))
IDENTITY = ScoreGeneratingFunction.from_callable('u', lambda u: u)


def _brute_tuple_mean(points, kernel):
    values = [kernel(*map(np.asarray, t))
              for t in itertools.permutations(points, kernel.k + 1)]
    return float(np.mean(values))


def test_oracle_statistic():
    u = np.array([0.1, 0.4, 0.7, 0.9])
    expected = np.mean((2 * u[1:] - 1) * (2 * u[:-1] - 1))
    assert oracle_serial_statistic(u, WILCOXON) == pytest.approx(expected)

    with pytest.raises(errors.SampleTooSmallError):
        oracle_serial_statistic([0.3], WILCOXON)


def test_approx_statistic_uses_pseudo_uniform_ranks(series):
    u = pseudo_uniform_ranks(decompose(series))
    assert serial_statistic_approx(series, WILCOXON) \
        == oracle_serial_statistic(u, WILCOXON)


def test_approx_statistic_is_invariant(series, increasing_transforms):
    kernel = SerialKernel.product(builtin_scores('hybrid-l/vdw-phi'),
                                  builtin_scores('hybrid-l/vdw-psi'))
    reference = serial_statistic_approx(series, kernel)
    for transform in increasing_transforms:
        assert serial_statistic_approx(transform(series), kernel) == reference


def test_exact_score_across_halves_factorizes():
    # Different halves are independent and the scores are linear.
    assert exact_serial_score((2, 2), (1, 3), WILCOXON) \
        == pytest.approx((2 / 6 - 1) * (2 * (0.5 + 1 / 6) - 1), abs=1e-9)


@pytest.mark.parametrize('ranks', [(1, 3), (3, 1)])
def test_exact_score_within_a_half(ranks):
    # Three uniforms on (0, 1/2): 2X - 1 = V - 1 with V the order
    # statistics of three uniforms, and E[(V₁ - 1)(V₃ - 1)] = 1/5.
    assert exact_serial_score((3, 0), ranks, WILCOXON) \
        == pytest.approx(0.2, abs=1e-9)


def test_exact_score_of_a_general_kernel_matches_monte_carlo(rng):
    kernel = SerialKernel.from_callable(1, lambda u0, u1: np.cos(3 * u0 * u1))
    N, ranks = (2, 3), (4, 2)
    draws = 400000
    minus = np.sort(rng.random((draws, 2)), axis=1) / 2
    plus = 0.5 + np.sort(rng.random((draws, 3)), axis=1) / 2
    ordered = np.concatenate([minus, plus], axis=1)
    values = kernel(ordered[:, ranks[0] - 1], ordered[:, ranks[1] - 1])
    stderr = np.std(values) / math.sqrt(draws)
    assert abs(exact_serial_score(N, ranks, kernel) - np.mean(values)) \
        < 4 * stderr


def test_exact_score_argument_checks():
    with pytest.raises(errors.InvalidParameterError):
        exact_serial_score((2, 2), (1, 1), WILCOXON)
    with pytest.raises(errors.RankOutOfRangeError):
        exact_serial_score((2, 2), (1, 5), WILCOXON)
    lag2 = SerialKernel.product(builtin_scores('vdw'), builtin_scores('vdw'),
                                k=2)
    with pytest.raises(errors.InvalidParameterError):
        exact_serial_score((2, 2), (1, 2), lag2)


def test_exact_statistic_quadrature_and_monte_carlo_agree():
    z = np.array([0.3, -1.1, 0.8, -0.2, 1.7, -0.6, 0.05])
    kernel = SerialKernel.product(builtin_scores('wilcoxon-phi'), IDENTITY)
    quad = serial_statistic_exact(z, kernel)
    assert quad.stderr == 0.0

    mc = serial_statistic_exact(z, kernel, rng=np.random.default_rng(1),
                                method='monte-carlo', budget=50000)
    assert abs(quad.value - mc.value) < 5 * mc.stderr


def test_exact_statistic_of_higher_order_is_reproducible(series):
    kernel = SerialKernel.product(builtin_scores('vdw'), builtin_scores('vdw'),
                                  k=2)
    first = serial_statistic_exact(series[:12], kernel, budget=2000)
    assert first == serial_statistic_exact(series[:12], kernel, budget=2000)
    assert first.stderr > 0

    with pytest.raises(errors.InvalidParameterError):
        serial_statistic_exact(series, kernel, method='simpson')


@pytest.mark.parametrize('kernel', [
    WILCOXON,
    SerialKernel.product(IDENTITY, builtin_scores('vdw'), k=2),
    SerialKernel.from_callable(1, lambda u0, u1: u0 * u1 ** 2),
    SerialKernel.from_callable(2, lambda u0, u1, u2: u0 * u1 + u2),
])
def test_distinct_tuple_mean(kernel, rng):
    points = rng.random(6)
    assert distinct_tuple_mean(points, kernel) \
        == pytest.approx(_brute_tuple_mean(points, kernel), abs=1e-12)


def test_exact_expected_value_is_the_kernel_mean():
    kernel = SerialKernel.product(IDENTITY, IDENTITY)
    for n in (3, 10, 25):
        assert serial_expected_value(n, kernel, 'exact') \
            == pytest.approx(0.25, abs=1e-9)


def test_conditional_means_of_both_flavors_approach_each_other():
    kernel = SerialKernel.product(builtin_scores('hybrid-w/vdw-phi'),
                                  builtin_scores('hybrid-w/vdw-psi'))
    gaps = [abs(serial_conditional_mean((n // 3, n - n // 3), kernel, 'exact')
                - serial_conditional_mean((n // 3, n - n // 3), kernel,
                                          'approx'))
            for n in (30, 300, 3000)]
    assert gaps[0] > gaps[1] > gaps[2]


def test_standardize_serial(series):
    n = series.size
    value = serial_statistic_approx(series, WILCOXON)
    exact = standardize_serial(value, WILCOXON, n)
    asymptotic = standardize_serial(value, WILCOXON, n, centering='asymptotic')
    assert exact != asymptotic
    assert serial_result(series, WILCOXON).z == pytest.approx(exact)

    with pytest.raises(errors.InvalidParameterError):
        standardize_serial(value, WILCOXON, n, centering='median')


def test_serial_representation_is_finite(series):
    kernel = SerialKernel.product(builtin_scores('vdw'), builtin_scores('vdw'))
    gap = (serial_statistic_approx(series, kernel) - kernel.mu
           - serial_representation(series, kernel, make_density('normal')))
    assert math.isfinite(gap)
    assert abs(gap) < 1


def _serial_gap(flavor, density, n, seed, reps=200):
    kernel = hybrid_kernel(flavor)
    rng = np.random.default_rng(seed)
    gaps = []
    for _ in range(reps):
        z = density.sample(rng, n)
        gaps.append(serial_statistic_approx(z, kernel) - kernel.mu
                    - serial_representation(z, kernel, density))
    return math.sqrt(n) * np.median(np.abs(gaps))


@pytest.mark.parametrize('flavor, spec', [
    ('L/vdW', 'hybrid-laplace-normal'),
    ('W/vdW', 'hybrid-logistic-normal'),
])
def test_serial_representation_gap_shrinks(flavor, spec):
    density = make_density(spec)
    gaps = [_serial_gap(flavor, density, n, seed)
            for n, seed in ((50, 1), (200, 2), (800, 3))]
    assert gaps[0] > gaps[1] > gaps[2]


def test_conditional_mean_fluctuates_like_the_sign_counts():
    # n Var(E[S | N]) over binomial N tends to the unconditional extra.
    kernel = hybrid_kernel('L/vdW')
    f = make_density('hybrid-laplace-normal')
    assert kernel.uncond_extra == pytest.approx(
        (2 * f.f0 * f.mu_f) ** 2, rel=1e-6)

    gaps = []
    for n in (200, 800, 3200):
        plus = np.arange(n + 1)
        weights = stats.binom.pmf(plus, n, 0.5)
        means = np.array([serial_conditional_mean((n - p, p), kernel, 'exact')
                          for p in plus])
        centered = means - np.dot(weights, means)
        variance = float(np.dot(weights, centered ** 2))
        gaps.append(abs(n * variance / kernel.uncond_extra - 1))

    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 0.02
