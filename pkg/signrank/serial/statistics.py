"""
Serial sign-and-rank statistics

    S = (n - k)⁻¹ Σₜ a(N; Rₜ, …, Rₜ₋ₖ)

with approximate scores ``φ_k(R̲ₜ, …, R̲ₜ₋ₖ)`` or exact scores, the
conditional expectation of ``φ_k`` at the order statistics holding
those ranks.
"""
import functools
import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import stats

from .. import quadrature
from ..errors import (
    SampleTooSmallError, DegenerateStatisticError, InvalidParameterError,
    RankOutOfRangeError
)
from ..helpers import falling_factorial
from ..nonserial import pseudo_uniform_ranks
from ..scores import ScoreFlavor
from ..signsranks import decompose

_log = logging.getLogger(__name__)

#: Configurations drawn by the conditional Monte Carlo path.
MONTE_CARLO_BUDGET = 100000

_MONTE_CARLO_CHUNK = 1000


@dataclass(frozen=True)
class SerialResult:
    """``z = (value - centering) / std``."""
    value: float
    centering: float
    std: float
    z: float


class SerialValue(NamedTuple):
    """A statistic value with the standard error of its computation."""
    value: float
    stderr: float


def _lagged(u, k):
    n = len(u)
    return [u[k - m:n - m] for m in range(k + 1)]


def _check_size(n, k):
    if n <= k:
        raise SampleTooSmallError(n, k + 1)


def serial_statistic_approx(z, kernel):
    """``(n - k)⁻¹ Σₜ φ_k(R̲ₜ, R̲ₜ₋₁, …, R̲ₜ₋ₖ)``."""
    d = decompose(z)
    _check_size(d.n, kernel.k)
    return oracle_serial_statistic(pseudo_uniform_ranks(d), kernel)


def oracle_serial_statistic(u, kernel):
    """
    The serial statistic evaluated at arbitrary points of ``(0, 1)``,
    typically ``F(Zₜ)`` when the distribution function is known.
    """
    u = np.asarray(u, dtype=float)
    _check_size(u.size, kernel.k)
    values = np.broadcast_to(kernel(*_lagged(u, kernel.k)), (u.size - kernel.k,))
    return float(np.mean(values))


# region Exact scores


def _locate(N, rank):
    # -> (sign, within-half index, half size)
    n_minus, n_plus = N
    if not 1 <= rank <= n_minus + n_plus:
        raise RankOutOfRangeError(rank, n_minus + n_plus)
    if rank <= n_minus:
        return -1, rank, n_minus
    return 1, rank - n_minus, n_plus


def _to_half(sign, x):
    return x / 2 if sign < 0 else (1 + x) / 2


def _pair_expectation(kernel, first, second):
    """
    ``E[φ₁(U, V)]`` where ``U`` and ``V`` are the order statistics given
    as ``(sign, i, ν)``, ``U`` at the current time and ``V`` lagged.
    """
    (s1, i1, nu1), (s2, i2, nu2) = first, second

    if kernel.product_form is not None and s1 != s2:
        phi, psi = kernel.product_form
        return (quadrature.beta_expectation(
                    lambda x: phi(_to_half(s1, x)), i1, nu1 + 1 - i1)
                * quadrature.beta_expectation(
                    lambda x: psi(_to_half(s2, x)), i2, nu2 + 1 - i2))

    if s1 != s2:
        # Different halves are independent samples.
        def outer(x):
            return quadrature.beta_expectation(
                lambda y: kernel(_to_half(s1, x), _to_half(s2, y)),
                i2, nu2 + 1 - i2, tol=1e-10)

        return quadrature.beta_expectation(outer, i1, nu1 + 1 - i1)

    # Same half: given the smaller order statistic X = x, the larger one
    # is x + (1 - x) B with B ~ Beta(j - i, ν - j + 1).
    nu = nu1
    swapped = i1 > i2
    lo, hi = (i2, i1) if swapped else (i1, i2)

    def joint(x):
        def inner(b):
            y = x + (1 - x) * b
            small, large = _to_half(s1, x), _to_half(s1, y)
            if swapped:
                return kernel(large, small)
            return kernel(small, large)

        return quadrature.beta_expectation(inner, hi - lo, nu - hi + 1,
                                           tol=1e-10)

    return quadrature.beta_expectation(joint, lo, nu + 1 - lo)


def exact_serial_score(N, ranks, kernel):
    """
    The exact score ``a(N; r₀, r₁)`` of a lag-one kernel: the expectation
    of ``φ₁`` at the order statistics holding the distinct ranks
    ``(r₀, r₁)`` given the counts ``N = (N₋, N₊)``.
    """
    if kernel.k != 1 or len(ranks) != 2:
        raise InvalidParameterError(
            'kernel', kernel, 'exact scores by quadrature need k = 1')
    N = tuple(int(x) for x in N)
    r0, r1 = (int(r) for r in ranks)
    if r0 == r1:
        raise InvalidParameterError('ranks', ranks, 'ranks must differ')
    return float(_pair_expectation(kernel, _locate(N, r0), _locate(N, r1)))


def _monte_carlo(d, kernel, rng, budget):
    values = []
    remaining = budget
    while remaining > 0:
        size = min(_MONTE_CARLO_CHUNK, remaining)
        remaining -= size
        minus = np.sort(rng.random((size, d.n_minus)), axis=1) / 2
        plus = 0.5 + np.sort(rng.random((size, d.n_plus)), axis=1) / 2
        # Column r - 1 holds the order statistic with rank r.
        ordered = np.concatenate([minus, plus], axis=1)
        u = ordered[:, d.ranks - 1]
        lags = [u[:, kernel.k - m:d.n - m] for m in range(kernel.k + 1)]
        values.append(np.mean(kernel(*lags), axis=1))

    values = np.concatenate(values)
    return SerialValue(float(np.mean(values)),
                       float(np.std(values, ddof=1) / math.sqrt(values.size)))


def serial_statistic_exact(z, kernel, rng=None, method=None,
                           budget=MONTE_CARLO_BUDGET):
    """
    The serial statistic with exact scores.

    Arguments
        z (`array`):
            The residuals.

        kernel (`SerialKernel`):
            The kernel. Lag-one kernels are integrated deterministically,
            higher orders by conditional Monte Carlo.

        rng (`numpy.random.Generator`, optional):
            Stream for the Monte Carlo path. A stream seeded with 0 is
            used when omitted, so results are reproducible.

        method (`str`, optional):
            ``'quadrature'`` or ``'monte-carlo'`` to force a path.

        budget (`int`, optional):
            Configurations drawn by the Monte Carlo path.

    Returns
        A `SerialValue`, whose ``stderr`` is zero for the quadrature path.
    """
    d = decompose(z)
    _check_size(d.n, kernel.k)
    method = method or ('quadrature' if kernel.k == 1 else 'monte-carlo')

    if method == 'quadrature':
        cache = {}
        total = 0.0
        for t in range(1, d.n):
            pair = (int(d.ranks[t]), int(d.ranks[t - 1]))
            if pair not in cache:
                cache[pair] = exact_serial_score(d.counts, pair, kernel)
            total += cache[pair]
        return SerialValue(total / (d.n - 1), 0.0)

    if method != 'monte-carlo':
        raise InvalidParameterError(
            'method', method, 'use "quadrature" or "monte-carlo"')

    _log.debug('Exact serial scores of order %d by Monte Carlo (%d draws)',
               kernel.k, budget)
    if rng is None:
        rng = np.random.default_rng(0)
    return _monte_carlo(d, kernel, rng, budget)


# endregion

# region Centering


def distinct_tuple_mean(points, kernel):
    """
    The average of ``φ_k`` over every ordered tuple of ``k + 1``
    distinct elements of ``points``.
    """
    q = np.asarray(points, dtype=float)
    n, k = q.size, kernel.k
    _check_size(n, k)

    if kernel.product_form is not None:
        phi, psi = kernel.product_form
        f, g = phi(q), psi(q)
        # The k - 1 middle coordinates are free, so only the two ends
        # have to be distinct.
        return float((f.sum() * g.sum() - np.dot(f, g)) / (n * (n - 1)))

    if k == 1:
        values = np.broadcast_to(kernel(q[:, None], q[None, :]), (n, n))
        return float((values.sum() - np.trace(values)) / (n * (n - 1)))

    total = 0.0
    off_diagonal = ~np.eye(n, dtype=bool)
    for i in range(n):
        values = np.broadcast_to(
            kernel(q[i], q[:, None], q[None, :]), (n, n))
        mask = off_diagonal.copy()
        mask[i, :] = False
        mask[:, i] = False
        total += float(values[mask].sum())
    return total / falling_factorial(n, 3)


def serial_conditional_mean(N, kernel, flavor):
    """
    ``E[S | N]`` under the null hypothesis.

    With exact scores each sign pattern of ``k + 1`` distinct positions
    contributes the mean of ``φ_k`` over its box; with approximate scores
    it is the average over distinct tuples of the pseudo-uniform positions.
    """
    flavor = ScoreFlavor.parse(flavor)
    n_minus, n_plus = (int(x) for x in N)
    n, k = n_minus + n_plus, kernel.k
    _check_size(n, k)

    if flavor == ScoreFlavor.APPROXIMATE:
        positions = np.concatenate([
            np.arange(1, n_minus + 1) / (2 * (n_minus + 1)),
            0.5 + np.arange(1, n_plus + 1) / (2 * (n_plus + 1)),
        ])
        return distinct_tuple_mean(positions, kernel)

    total = 0.0
    tuples = falling_factorial(n, k + 1)
    for pattern, box in kernel.moments.boxes.items():
        plus = sum(1 for s in pattern if s > 0)
        ways = falling_factorial(n_plus, plus) \
            * falling_factorial(n_minus, k + 1 - plus)
        if ways:
            total += ways / tuples * 2 ** (k + 1) * box
    return total


@functools.lru_cache(maxsize=256)
def serial_expected_value(n, kernel, flavor):
    """``E[S]``, the binomial mixture of `serial_conditional_mean`."""
    flavor = ScoreFlavor.parse(flavor)
    weights = stats.binom.pmf(np.arange(n + 1), n, 0.5)
    return float(sum(
        w * serial_conditional_mean((nu, n - nu), kernel, flavor)
        for nu, w in enumerate(weights)))


# endregion


def serial_std(kernel, n):
    """The asymptotic standard deviation of the statistic at size ``n``."""
    variance = kernel.V2 + kernel.uncond_extra
    if not variance > 0:
        raise DegenerateStatisticError('the serial statistic')
    return math.sqrt(variance / (n - kernel.k))


def standardize_serial(value, kernel, n, centering='exact',
                       flavor='approximate'):
    """
    Returns ``√(n - k) (S - E S) / √(V² + extra)``.

    ``centering='exact'`` uses the finite-sample mean of the given score
    flavor; ``'asymptotic'`` uses ``μ_φk``, which is biased by ``O(1/n)``
    for approximate scores.
    """
    _check_size(n, kernel.k)
    std = serial_std(kernel, n)
    return (value - _centering(kernel, n, centering, flavor)) / std


def _centering(kernel, n, centering, flavor):
    if centering == 'exact':
        return serial_expected_value(n, kernel, ScoreFlavor.parse(flavor))
    if centering == 'asymptotic':
        return kernel.mu
    raise InvalidParameterError(
        'centering', centering, 'use "exact" or "asymptotic"')


def serial_result(z, kernel, flavor='approximate', centering='exact',
                  rng=None):
    """Computes and standardizes the serial statistic of ``z``."""
    flavor = ScoreFlavor.parse(flavor)
    if flavor == ScoreFlavor.APPROXIMATE:
        value = serial_statistic_approx(z, kernel)
    else:
        value = serial_statistic_exact(z, kernel, rng=rng).value

    n = len(z)
    center = _centering(kernel, n, centering, flavor)
    std = serial_std(kernel, n)
    return SerialResult(value, center, std, (value - center) / std)


def serial_representation(z, kernel, density):
    """
    The asymptotic representation of ``S - μ_φk`` computed with the true
    distribution function ``F``:

        T - E[T | order statistics] + E[S_exact | N] - μ_φk

    ``T`` being the statistic at the points ``F(Zₜ)``.
    """
    d = decompose(z)
    _check_size(d.n, kernel.k)
    u = density.cdf(np.asarray(z, dtype=float))
    return (oracle_serial_statistic(u, kernel)
            - distinct_tuple_mean(u, kernel)
            + serial_conditional_mean(d.counts, kernel, ScoreFlavor.EXACT)
            - kernel.mu)
