"""
Signs, ranks and sign counts of a residual vector, plus an exhaustive
enumeration of their joint null distribution for small samples.
"""
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    ZeroResidualError, TiedResidualsError, SampleTooSmallError,
    EnumerationSizeError, InvalidParameterError
)

MAX_ENUMERATION_SIZE = 9


@dataclass(frozen=True, eq=False)
class SignRankDecomposition:
    """
    The signs ``s``, the ranks ``R`` and the counts ``(N₋, N₊)`` of
    a residual vector. Negative residuals always hold the ranks
    ``1..N₋`` and positive ones the ranks ``N₋+1..n``.
    """
    signs: np.ndarray
    ranks: np.ndarray
    n_minus: int
    n_plus: int

    @property
    def n(self):
        return self.n_minus + self.n_plus

    @property
    def counts(self):
        """The pair ``(N₋, N₊)``, as score tables expect it."""
        return self.n_minus, self.n_plus

    def __eq__(self, other):
        if not isinstance(other, SignRankDecomposition):
            return NotImplemented
        return (self.counts == other.counts
                and np.array_equal(self.signs, other.signs)
                and np.array_equal(self.ranks, other.ranks))

    __hash__ = None


def decompose(z):
    """
    Computes the signs and ranks of ``z``.

    :param z: the residuals, none of them zero and no two equal.
    :raises ZeroResidualError: if some residual is exactly zero.
    :raises TiedResidualsError: if two residuals coincide.
    """
    z = np.asarray(z, dtype=float)
    if z.ndim != 1:
        raise InvalidParameterError('z', z.shape, 'a single series is needed')
    if z.size == 0:
        raise SampleTooSmallError(0, 1)
    if not np.all(np.isfinite(z)):
        raise InvalidParameterError(
            'z', z[~np.isfinite(z)].tolist(), 'residuals must be finite')

    zeros = np.flatnonzero(z == 0)
    if zeros.size:
        raise ZeroResidualError(zeros.tolist())

    order = np.argsort(z, kind='stable')
    ordered = z[order]
    tied = ordered[1:] == ordered[:-1]
    if np.any(tied):
        raise TiedResidualsError(np.unique(ordered[1:][tied]).tolist())

    ranks = np.empty(z.size, dtype=np.int64)
    ranks[order] = np.arange(1, z.size + 1)
    signs = np.where(z > 0, 1, -1).astype(np.int64)
    n_minus = int(np.count_nonzero(signs < 0))
    return SignRankDecomposition(signs, ranks, n_minus, z.size - n_minus)


def iter_null_invariant(n):
    """
    Yields every attainable ``(decomposition, probability)`` pair under
    the null hypothesis, the probability as an exact `Fraction`.

    Signs are uniform over the ``2ⁿ`` vectors and, given the signs, the
    ranks of each half are uniform over its ``N₋!`` (or ``N₊!``)
    arrangements, so there are ``(n + 1)!`` atoms in total.
    """
    if not 1 <= n <= MAX_ENUMERATION_SIZE:
        raise EnumerationSizeError(n, MAX_ENUMERATION_SIZE)

    for signs in itertools.product((-1, 1), repeat=n):
        signs = np.array(signs, dtype=np.int64)
        negative = np.flatnonzero(signs < 0)
        positive = np.flatnonzero(signs > 0)
        n_minus = negative.size
        probability = Fraction(1, 2 ** n * math.factorial(n_minus)
                               * math.factorial(n - n_minus))

        for low in itertools.permutations(range(1, n_minus + 1)):
            for high in itertools.permutations(range(n_minus + 1, n + 1)):
                ranks = np.empty(n, dtype=np.int64)
                ranks[negative] = low
                ranks[positive] = high
                yield (SignRankDecomposition(signs, ranks, n_minus,
                                             n - n_minus), probability)


def enumerate_null_invariant(n):
    """Like `iter_null_invariant`, but returns a list."""
    return list(iter_null_invariant(n))
