"""
Linear nonserial sign-and-rank statistics

    S = n⁻¹ Σᵢ cᵢ a(N; Rᵢ)

for regression constants ``c``, with their exact null moments, their
conditional and unconditional standardizations, the location special
case and the central sequences of median regression.
"""
import enum
import functools
import logging
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from scipy import stats

from . import distributions
from .errors import (
    LengthMismatchError, DegenerateStatisticError, NoSignInformationError,
    InvalidParameterError, SampleTooSmallError
)
from .scores import build_score_table
from .signsranks import decompose
from .testing import two_sided_test, DEFAULT_ALPHA

_log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RegressionDesign:
    """The regression constants ``c₁, …, cₙ`` of a nonserial statistic."""
    c: np.ndarray

    @classmethod
    def from_constants(cls, c):
        c = np.asarray(c, dtype=float)
        if c.ndim != 1 or c.size == 0:
            raise InvalidParameterError('c', c.shape,
                                        'a non-empty vector is needed')
        if not np.all(np.isfinite(c)):
            raise InvalidParameterError('c', c.tolist(),
                                        'constants must be finite')
        c.setflags(write=False)
        return cls(c)

    @classmethod
    def location(cls, n):
        """The design with every constant equal to one."""
        return _location_design(n)

    @property
    def n(self):
        return self.c.size

    @functools.cached_property
    def c_bar(self):
        return float(np.mean(self.c))

    @functools.cached_property
    def ssq_centered(self):
        return float(np.sum((self.c - self.c_bar) ** 2))

    @property
    def is_degenerate(self):
        """`True` when every constant is the same."""
        return self.ssq_centered <= 1e-14 * max(1.0, float(np.sum(self.c ** 2)))

    @property
    def noether_ratio(self):
        """
        ``maxᵢ (cᵢ - c̄)² / Σⱼ (cⱼ - c̄)²``, a leverage diagnostic that should
        be small for the asymptotic results to be trustworthy. `None`
        for degenerate designs.
        """
        if self.is_degenerate:
            return None
        return float(np.max((self.c - self.c_bar) ** 2)) / self.ssq_centered


@functools.lru_cache(maxsize=16)
def _location_design(n):
    return RegressionDesign.from_constants(np.ones(n))


@dataclass(frozen=True)
class NonserialResult:
    value: float
    exact_mean: float
    exact_var: float
    uncond_std: float
    z: float
    noether_ratio: Optional[float] = None


class Moments(NamedTuple):
    """
    Exact null moments. ``var`` is the sum of the rank part (the
    variance within sign configurations) and the sign part (the
    variance of the conditional mean across configurations).
    """
    mean: float
    var: float
    rank_var: float
    sign_var: float


def pseudo_uniform_ranks(d):
    """
    Maps ranks to ``(0, 1)``: ``R/(2(N₋+1))`` for negative residuals and
    ``1/2 + (R - N₋)/(2(N₊+1))`` for positive ones.
    """
    ranks = d.ranks.astype(float)
    return np.where(
        ranks <= d.n_minus,
        ranks / (2 * (d.n_minus + 1)),
        0.5 + (ranks - d.n_minus) / (2 * (d.n_plus + 1)))


def _check_lengths(n, *others):
    for other in others:
        if other != n:
            raise LengthMismatchError(n, other)


def nonserial_statistic(z, design, table):
    """Returns ``n⁻¹ Σ cᵢ a(N; Rᵢ)``."""
    d = decompose(z)
    _check_lengths(table.n, d.n, design.n)
    scores = table.row(d.counts)[d.ranks - 1]
    return float(np.dot(design.c, scores)) / d.n


def conditional_mean(N, design, table):
    """``E[S | N] = c̄ n⁻¹ Σⱼ a(N; j)``, ranks being independent of ``N``."""
    _check_lengths(table.n, design.n, int(N[0]) + int(N[1]))
    return design.c_bar * float(np.mean(table.row(N)))


def exact_moments(design, table):
    """
    Returns the exact null `Moments` of the statistic.

    Given ``N`` the ranks are a uniform permutation, so the statistic is
    a linear rank statistic with scores ``a(N; ·)``; the variance adds
    the binomial spread of ``E[S | N]`` to the mean conditional variance.
    """
    _check_lengths(table.n, design.n)
    return _exact_moments(design, table)


@functools.lru_cache(maxsize=64)
def _exact_moments(design, table):
    n = table.n
    weights = stats.binom.pmf(np.arange(n + 1), n, 0.5)
    row_means = np.empty(n + 1)
    row_spread = np.empty(n + 1)
    for nu in range(n + 1):
        row = table.row((nu, n - nu))
        row_means[nu] = row.mean()
        row_spread[nu] = np.sum((row - row_means[nu]) ** 2)

    mean_score = float(np.dot(weights, row_means))
    sign_var = design.c_bar ** 2 * max(
        0.0, float(np.dot(weights, row_means ** 2)) - mean_score ** 2)

    if n == 1:
        _log.warning('Rank variance of a single observation is taken as 0')
        rank_var = 0.0
    else:
        rank_var = (design.ssq_centered * float(np.dot(weights, row_spread))
                    / (n * n * (n - 1)))

    return Moments(design.c_bar * mean_score, rank_var + sign_var,
                   rank_var, sign_var)


def unconditional_variance(design, phi):
    """``σ²_φ n⁻¹ Σ(cᵢ - c̄)² + [c̄ (μ⁻_φ - μ⁺_φ)]²``."""
    return (phi.sigma2 * design.ssq_centered / design.n
            + (design.c_bar * (phi.mu_minus - phi.mu_plus)) ** 2)


def standardize_unconditional(value, design, phi, n, table=None):
    """
    Standardizes ``value`` with its exact mean and asymptotic variance.

    Arguments
        value (`float`):
            The statistic as returned by `nonserial_statistic`.

        design (`RegressionDesign`):
            The regression constants the statistic was computed with.

        phi (`ScoreGeneratingFunction`):
            The score-generating function behind the scores.

        n (`int`):
            The sample size.

        table (`ScoreTable`, optional):
            The table the statistic used. The exact mean depends on it;
            approximate scores are assumed when it is omitted.
    """
    if table is None:
        table = build_score_table(n, phi, 'approximate')
    _check_lengths(n, table.n, design.n)

    denominator = unconditional_variance(design, phi)
    if not denominator > 0:
        raise DegenerateStatisticError('the nonserial statistic')

    mean = exact_moments(design, table).mean
    return math.sqrt(n) * (value - mean) / math.sqrt(denominator)


def standardize_conditional(value, N, design, table):
    """
    Standardizes ``value`` given the sign counts: centered at ``E[S | N]``
    and scaled by ``σ_φ (n⁻¹ Σ(cᵢ - c̄)²)^½``. Degenerate designs have no
    conditional fluctuation and raise.
    """
    n = table.n
    denominator = table.phi.sigma2 * design.ssq_centered / n
    if design.is_degenerate or not denominator > 0:
        raise DegenerateStatisticError('the conditional nonserial statistic')

    mean = conditional_mean(N, design, table)
    return math.sqrt(n) * (value - mean) / math.sqrt(denominator)


def location_statistic(z, table, phi=None):
    """
    The standardized location statistic, with every constant equal to
    one: ``√n (S - E S) / |μ⁻_φ - μ⁺_φ|``.
    """
    phi = phi or table.phi
    difference = abs(phi.mu_minus - phi.mu_plus)
    if difference < 1e-12:
        raise NoSignInformationError()

    design = RegressionDesign.location(table.n)
    value = nonserial_statistic(z, design, table)
    mean = exact_moments(design, table).mean
    return math.sqrt(table.n) * (value - mean) / difference


def nonserial_test(z, design, table, alpha=DEFAULT_ALPHA, name='nonserial'):
    """
    Computes the statistic of ``z`` and tests it two-sided.

    :return: a ``(NonserialResult, TestResult)`` pair.
    """
    value = nonserial_statistic(z, design, table)
    moments = exact_moments(design, table)
    z_value = standardize_unconditional(
        value, design, table.phi, table.n, table=table)
    result = NonserialResult(
        value=value,
        exact_mean=moments.mean,
        exact_var=moments.var,
        uncond_std=math.sqrt(unconditional_variance(design, table.phi)),
        z=z_value,
        noether_ratio=design.noether_ratio,
    )
    return result, two_sided_test(z_value, alpha, name=name)


# region Median regression


class CentralSequenceFlavor(enum.Enum):
    ORACLE = 'oracle'
    SIGN_AND_RANK = 'sign-and-rank'

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        value = str(value).lower()
        if value == 'sign-and-rank-approx':
            return cls.SIGN_AND_RANK
        try:
            return cls(value)
        except ValueError:
            raise InvalidParameterError(
                'flavor', value, 'use "oracle" or "sign-and-rank"') from None


def median_regression_central_sequence(z, design, f, flavor):
    """
    Returns the pair ``(Δ₁, Δ₂)`` of central sequences for the intercept
    and the slope of a median regression with innovation density ``f``.

    The oracle flavor evaluates ``φ_f(F(Zᵢ))``, which needs the true
    residuals; the sign-and-rank flavor uses the pseudo-uniform ranks
    instead and only needs their signs and ranks.
    """
    flavor = CentralSequenceFlavor.parse(flavor)
    d = decompose(z)
    _check_lengths(d.n, design.n)

    n = d.n
    sign_term = 2 * f.f0 * (d.n_plus - d.n_minus) / n
    if flavor == CentralSequenceFlavor.ORACLE:
        scores = f.location_score(np.asarray(z, dtype=float))
    else:
        phi_f, _ = distributions.density_score_functions(f)
        scores = phi_f(pseudo_uniform_ranks(d))

    root = math.sqrt(n)
    delta_1 = root * sign_term
    delta_2 = root * (float(np.mean((design.c - design.c_bar) * scores))
                      + design.c_bar * sign_term)
    return delta_1, delta_2


# endregion


def nonserial_representation(z, design, phi, density):
    """
    The asymptotic representation of ``S - E S`` computed with the true
    distribution function:

        n⁻¹ Σ(cᵢ - c̄) φ(F(Zᵢ)) + c̄ {2N₋/n μ⁻ + 2N₊/n μ⁺ - μ}
    """
    d = decompose(z)
    _check_lengths(d.n, design.n)
    if d.n < 2:
        raise SampleTooSmallError(d.n, 2)

    u = density.cdf(np.asarray(z, dtype=float))
    n = d.n
    return (float(np.mean((design.c - design.c_bar) * phi(u)))
            + design.c_bar * (2 * d.n_minus / n * phi.mu_minus
                              + 2 * d.n_plus / n * phi.mu_plus - phi.mu))
