"""
Lag-one autocorrelation coefficients used as randomness tests: the
ordinary correlogram, the rank autocorrelations with their exact
permutation standard deviations and the sign-and-rank autocorrelations
built from the hybrid densities.
"""
import enum
import functools
import logging
import math

import numpy as np
from scipy import stats

from .. import distributions
from ..errors import (
    SampleTooSmallError, ZeroVarianceError, FlavorMismatchError,
    InvalidParameterError, UnknownStatisticError, TiedResidualsError
)
from ..helpers import falling_factorial, set_partitions
from ..nonserial import pseudo_uniform_ranks
from ..scores import builtin_scores
from ..signsranks import decompose
from .kernels import SerialKernel
from .statistics import SerialResult, distinct_tuple_mean

_log = logging.getLogger(__name__)

#: Smallest series the rank autocorrelations accept.
MIN_RANK_SIZE = 8

# variant -> (score of the current rank, score of the lagged rank)
RANK_VARIANTS = {
    'vdw': ('vdw', 'vdw'),
    'wilcoxon': ('wilcoxon-phi', 'wilcoxon-psi'),
    'laplace': ('laplace-phi', 'laplace-psi'),
}


# region Permutation moments


def _distinct_sum(vectors):
    """
    ``Σ x¹ᵢ₁ x²ᵢ₂ … xᵐᵢₘ`` over pairwise distinct indices, by Möbius
    inversion over the partitions of the ``m`` positions into blocks
    of equal indices. Works on float or `Fraction` (object) arrays.
    """
    total = 0
    for partition in set_partitions(range(len(vectors))):
        term = 1
        for block in partition:
            product = vectors[block[0]]
            for position in block[1:]:
                product = product * vectors[position]
            term = term * product.sum()
        sign = 1
        for block in partition:
            sign *= (-1) ** (len(block) - 1) * math.factorial(len(block) - 1)
        total = total + sign * term
    return total


def lag1_permutation_moments(a, b):
    """
    Mean and variance of ``L = Σₜ₌₂ⁿ a(Rₜ) b(Rₜ₋₁)`` when ``R`` is a
    uniformly random permutation, ``a[i - 1]`` being the score of rank
    ``i``.

    Adjacent terms share one position and non-adjacent ones none, so
    only products at 2, 3 and 4 distinct positions are needed.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    n = a.size
    if n < 4 or b.size != n:
        raise SampleTooSmallError(n, 4)

    m = n - 1
    first = _distinct_sum([a, b]) / falling_factorial(n, 2)
    square = _distinct_sum([a * a, b * b]) / falling_factorial(n, 2)
    adjacent = _distinct_sum([b, a * b, a]) / falling_factorial(n, 3)
    apart = _distinct_sum([a, b, a, b]) / falling_factorial(n, 4)

    mean = m * first
    variance = (m * square + 2 * (n - 2) * adjacent
                + (n - 2) * (n - 3) * apart - mean * mean)
    return mean, variance


@functools.lru_cache(maxsize=64)
def _rank_constants(variant, n):
    phi_name, psi_name = RANK_VARIANTS[variant]
    u = np.arange(1, n + 1) / (n + 1)
    a = np.asarray(builtin_scores(phi_name)(u), dtype=float)
    b = np.asarray(builtin_scores(psi_name)(u), dtype=float)
    mean, variance = lag1_permutation_moments(a, b)
    a.setflags(write=False)
    b.setflags(write=False)
    return a, b, mean / (n - 1), math.sqrt(variance) / (n - 1)


# endregion


def rank_autocorrelation(z, variant):
    """
    The lag-one rank autocorrelation with scores ``a(R/(n+1))`` and
    ``b(R/(n+1))``, centered and scaled by its exact permutation mean
    and standard deviation.

    :param variant: ``'vdw'``, ``'wilcoxon'`` or ``'laplace'``.
    """
    variant = str(variant).lower()
    if variant not in RANK_VARIANTS:
        raise UnknownStatisticError(variant, list(RANK_VARIANTS))

    z = np.asarray(z, dtype=float)
    if z.ndim != 1:
        raise InvalidParameterError('z', z.shape, 'a single series is needed')
    n = z.size
    if n < MIN_RANK_SIZE:
        raise SampleTooSmallError(n, MIN_RANK_SIZE)
    if not np.all(np.isfinite(z)):
        raise InvalidParameterError(
            'z', z[~np.isfinite(z)].tolist(), 'values must be finite')

    # Only the ordering matters here, so exact zeros are fine.
    ranks = stats.rankdata(z, method='min').astype(np.int64)
    if np.unique(ranks).size != n:
        values, counts = np.unique(z, return_counts=True)
        raise TiedResidualsError(values[counts > 1].tolist())

    a, b, centering, std = _rank_constants(variant, n)
    index = ranks - 1
    value = float(np.dot(a[index[1:]], b[index[:-1]])) / (n - 1)
    return SerialResult(value, centering, std, (value - centering) / std)


def ordinary_autocorrelation(z):
    """
    ``r₁ = (n - 1)⁻¹ Σ(Zₜ - Z̄)(Zₜ₋₁ - Z̄) / (n⁻¹ Σ(Zₜ - Z̄)²)``, whose
    standardized form is ``√n r₁``.
    """
    z = np.asarray(z, dtype=float)
    n = z.size
    if n < 3:
        raise SampleTooSmallError(n, 3)
    if not np.all(np.isfinite(z)):
        raise InvalidParameterError('z', z.tolist(), 'values must be finite')

    # The mean of a constant series need not reproduce it exactly.
    if np.ptp(z) == 0:
        raise ZeroVarianceError()
    centered = z - z.mean()
    variance = float(np.mean(centered ** 2))

    value = float(np.dot(centered[1:], centered[:-1])) / (n - 1) / variance
    std = 1 / math.sqrt(n)
    return SerialResult(value, 0.0, std, value / std)


# region Sign-and-rank autocorrelations


class SignRankFlavor(enum.Enum):
    W_VDW = 'W/vdW'
    L_VDW = 'L/vdW'

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).lower().replace('/', '')
        for member in cls:
            if member.value.lower().replace('/', '') == key:
                return member
        raise InvalidParameterError('flavor', value, 'use "W/vdW" or "L/vdW"')


_FLAVORS = {
    SignRankFlavor.W_VDW: (distributions.DensityKind.HYBRID_LOGISTIC_NORMAL,
                           'hybrid-w/vdw-phi', 'hybrid-w/vdw-psi'),
    SignRankFlavor.L_VDW: (distributions.DensityKind.HYBRID_LAPLACE_NORMAL,
                           'hybrid-l/vdw-phi', 'hybrid-l/vdw-psi'),
}

#: Smallest series the sign-and-rank autocorrelations accept.
MIN_SIGNRANK_SIZE = 3


@functools.lru_cache(maxsize=None)
def hybrid_kernel(flavor):
    """The product kernel ``φ_f(u₀) ψ_f(u₁)`` of a flavor's hybrid density."""
    _, phi_name, psi_name = _FLAVORS[SignRankFlavor.parse(flavor)]
    return SerialKernel.product(builtin_scores(phi_name),
                                builtin_scores(psi_name))


def signrank_autocorrelation(z, f, flavor):
    """
    The sign-and-rank autocorrelation

        r̲* = r̲ - E[r̲ | N] + 2 f(0) μ_f (N₊ - N₋) / n

    where ``r̲ = (n - 1)⁻¹ Σ φ_f(R̲ₜ) ψ_f(R̲ₜ₋₁)``, standardized by
    ``√(V² + extra) / √(n - 1)``.

    Arguments
        z (`array`):
            The residuals.

        f (`InnovationDensity`):
            The hybrid density matching ``flavor`` (with its default
            scale), which supplies ``f(0)`` and ``μ_f``.

        flavor (`str` | `SignRankFlavor`):
            ``'W/vdW'`` (logistic/normal) or ``'L/vdW'`` (Laplace/normal).
    """
    flavor = SignRankFlavor.parse(flavor)
    kind = _FLAVORS[flavor][0]
    if f.kind != kind or f.params:
        raise FlavorMismatchError(flavor.value, f)

    d = decompose(z)
    if d.n < MIN_SIGNRANK_SIZE:
        raise SampleTooSmallError(d.n, MIN_SIGNRANK_SIZE)

    kernel = hybrid_kernel(flavor)
    phi, psi = kernel.product_form
    u = pseudo_uniform_ranks(d)
    n = d.n

    value = float(np.dot(phi(u[1:]), psi(u[:-1]))) / (n - 1)
    correction = 2 * f.f0 * f.mu_f * (d.n_plus - d.n_minus) / n
    centering = distinct_tuple_mean(u, kernel) - correction

    variance = kernel.V2 + kernel.uncond_extra
    std = math.sqrt(variance / (n - 1))
    return SerialResult(value, centering, std, (value - centering) / std)


# endregion
