"""
Score-generating functions and the exact or approximate scores they
induce given the sign counts.

For a sample with ``N = (N₋, N₊)`` the negative residuals behave like
order statistics of ``N₋`` uniforms on ``(0, 1/2)`` and the positive
ones like order statistics of ``N₊`` uniforms on ``(1/2, 1)``. Exact
scores average ``φ`` over those order statistics; approximate scores
evaluate ``φ`` at their means.
"""
import enum
import functools
import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import special

from . import quadrature
from .errors import (
    UnknownScoreError, RankOutOfRangeError, InvalidParameterError
)

_log = logging.getLogger(__name__)

#: Tables up to this size are filled eagerly, larger ones row by row.
STREAMING_THRESHOLD = 5000


class ScoreFlavor(enum.Enum):
    EXACT = 'exact'
    APPROXIMATE = 'approximate'

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        value = str(value).lower()
        if value == 'approx':
            return cls.APPROXIMATE
        try:
            return cls(value)
        except ValueError:
            raise InvalidParameterError(
                'flavor', value, 'use "exact" or "approx"') from None


@dataclass(frozen=True, eq=False)
class ScoreGeneratingFunction:
    """
    A score-generating function ``φ`` on ``(0, 1)``.

    Its half-integrals and variance are computed by quadrature the first
    time they are needed, so functions whose moments do not exist can
    still be evaluated.
    """
    name: str
    func: Callable
    monotone_decomposable: bool = True
    skew_symmetric: bool = False

    @classmethod
    def from_callable(cls, name, func, monotone_decomposable=True,
                      skew_symmetric=False):
        return cls(name, func, monotone_decomposable, skew_symmetric)

    @classmethod
    def from_grid(cls, name, u, values):
        """
        Piecewise-linear interpolation of ``values`` given at the
        increasing abscissae ``u``; constant beyond the end points.
        """
        u = np.asarray(u, dtype=float)
        values = np.asarray(values, dtype=float)
        if u.ndim != 1 or u.shape != values.shape or u.size < 2:
            raise InvalidParameterError(
                'grid', u.shape, 'two matching vectors with 2+ points needed')
        if np.any(np.diff(u) <= 0):
            raise InvalidParameterError('grid', u.tolist(),
                                        'abscissae must increase')
        return cls(name, functools.partial(np.interp, xp=u, fp=values))

    def __call__(self, u):
        return self.func(np.asarray(u, dtype=float))

    def __repr__(self):
        return 'ScoreGeneratingFunction({!r})'.format(self.name)

    def _integral(self, func, a, b):
        return quadrature.integrate_1d(
            func, a, b, what='{} over ({}, {})'.format(self.name, a, b))

    @functools.cached_property
    def mu_minus(self):
        return self._integral(self, 0.0, 0.5)

    @functools.cached_property
    def mu_plus(self):
        return self._integral(self, 0.5, 1.0)

    @property
    def mu(self):
        return self.mu_minus + self.mu_plus

    @functools.cached_property
    def sigma2(self):
        def square(u):
            return self(u) ** 2

        second = self._integral(square, 0.0, 0.5) \
            + self._integral(square, 0.5, 1.0)
        return second - self.mu ** 2


# region Builtin score functions


def _vdw(u):
    return special.ndtri(u)


def _wilcoxon_phi(u):
    return 2 * u - 1


def _wilcoxon_psi(u):
    return special.logit(u)


def _laplace_phi(u):
    return np.sign(2 * u - 1)


def _laplace_psi(u):
    return np.where(u <= 0.5, np.log(2 * u), -np.log(2 * (1 - u)))


_GAMMA_W = math.sqrt(math.pi / 8)
_GAMMA_L = math.sqrt(math.pi / 2)


def _hybrid_w_phi(u):
    return np.where(u <= 0.5, (2 * u - 1) / _GAMMA_W, special.ndtri(u))


def _hybrid_w_psi(u):
    return np.where(u <= 0.5, _GAMMA_W * special.logit(u), special.ndtri(u))


def _hybrid_l_phi(u):
    return np.where(u <= 0.5, -1 / _GAMMA_L, special.ndtri(u))


def _hybrid_l_psi(u):
    return np.where(u <= 0.5, _GAMMA_L * np.log(2 * u), special.ndtri(u))


# name -> (function, skew-symmetric)
_BUILTINS = {
    'vdw': (_vdw, True),
    'wilcoxon-phi': (_wilcoxon_phi, True),
    'wilcoxon-psi': (_wilcoxon_psi, True),
    'laplace-phi': (_laplace_phi, True),
    'laplace-psi': (_laplace_psi, True),
    'hybrid-w/vdw-phi': (_hybrid_w_phi, False),
    'hybrid-w/vdw-psi': (_hybrid_w_psi, False),
    'hybrid-l/vdw-phi': (_hybrid_l_phi, False),
    'hybrid-l/vdw-psi': (_hybrid_l_psi, False),
}

BUILTIN_NAMES = tuple(_BUILTINS)


def builtin_scores(name):
    """
    Returns one of the builtin score-generating functions by its
    (case-insensitive) name; see `BUILTIN_NAMES`.
    """
    return _builtin(str(name).lower())


@functools.lru_cache(maxsize=None)
def _builtin(name):
    try:
        func, skew = _BUILTINS[name]
    except KeyError:
        raise UnknownScoreError(name, _BUILTINS) from None
    return ScoreGeneratingFunction(name, func, True, skew)


# endregion

# region Individual scores


def _check(N, rank):
    n_minus, n_plus = (int(x) for x in N)
    n = n_minus + n_plus
    if not 1 <= rank <= n:
        raise RankOutOfRangeError(rank, n)
    return n_minus, n_plus


def _half_minus(phi, x):
    return phi(x / 2)


def _half_plus(phi, x):
    return phi((1 + x) / 2)


def approx_score(N, rank, phi):
    """
    Returns the approximate score ``φ(R̲)`` of ``rank`` given the counts
    ``N = (N₋, N₊)``, ``R̲`` being the pseudo-uniform position of
    the rank.
    """
    n_minus, n_plus = _check(N, rank)
    if rank <= n_minus:
        return float(phi(rank / (2 * (n_minus + 1))))
    return float(phi(0.5 + (rank - n_minus) / (2 * (n_plus + 1))))


def exact_score(N, rank, phi):
    """
    Returns the exact score of ``rank`` given ``N = (N₋, N₊)``: the
    expectation of ``φ`` at the order statistic of the right half.

    :raises QuadratureError: if the Beta-weighted integral does not
                             reach an absolute tolerance of 1e-9.
    """
    n_minus, n_plus = _check(N, rank)
    if rank <= n_minus:
        return _exact_branch_value(phi, -1, n_minus, rank)
    return _exact_branch_value(phi, 1, n_plus, rank - n_minus)


def _exact_branch_value(phi, sign, nu, i):
    half = _half_minus if sign < 0 else _half_plus
    return quadrature.beta_expectation(
        functools.partial(half, phi), i, nu + 1 - i,
        what='exact score of {} ({}, nu={}, i={})'.format(
            phi.name if hasattr(phi, 'name') else phi,
            'minus' if sign < 0 else 'plus', nu, i))


def _approx_branch(phi, sign, nu):
    i = np.arange(1, nu + 1)
    u = i / (2 * (nu + 1))
    if sign > 0:
        u = u + 0.5
    return np.asarray(phi(u), dtype=float)


def _exact_branch(phi, sign, nu):
    return np.array([_exact_branch_value(phi, sign, nu, i)
                     for i in range(1, nu + 1)], dtype=float)


# endregion


class ScoreTable:
    """
    The scores ``a(N; ·)`` of a sample size for every sign configuration.

    ``minus(ν)[i - 1]`` holds the score of within-half rank ``i`` among
    ``ν`` negative residuals and ``plus(ν)[i - 1]`` the same for the
    positive ones, ``1 <= i <= ν <= n``.
    """
    def __init__(self, n, phi, flavor):
        if n < 1:
            raise InvalidParameterError('n', n, 'at least one observation')
        self.n = int(n)
        self.phi = phi
        self.flavor = ScoreFlavor.parse(flavor)
        self._branches = {}

    def __repr__(self):
        return 'ScoreTable(n={}, phi={!r}, flavor={})'.format(
            self.n, getattr(self.phi, 'name', self.phi), self.flavor.value)

    def _branch(self, sign, nu):
        key = (sign, nu)
        values = self._branches.get(key)
        if values is None:
            if self.flavor == ScoreFlavor.APPROXIMATE:
                values = _approx_branch(self.phi, sign, nu)
            else:
                values = _exact_branch(self.phi, sign, nu)
            values.setflags(write=False)
            self._branches[key] = values
        return values

    def minus(self, nu):
        return self._branch(-1, nu)

    def plus(self, nu):
        return self._branch(1, nu)

    def fill(self):
        """Computes every entry at once."""
        _log.debug('Filling %r', self)
        for nu in range(1, self.n + 1):
            self.minus(nu)
            self.plus(nu)
        return self

    def row(self, N):
        """The scores of ranks ``1..n`` given ``N = (N₋, N₊)``."""
        n_minus, n_plus = (int(x) for x in N)
        if n_minus + n_plus != self.n:
            raise InvalidParameterError(
                'N', N, 'counts must add up to {}'.format(self.n))
        parts = []
        if n_minus:
            parts.append(self.minus(n_minus))
        if n_plus:
            parts.append(self.plus(n_plus))
        return np.concatenate(parts)

    def score(self, N, rank):
        n_minus, n_plus = _check(N, rank)
        if rank <= n_minus:
            return float(self.minus(n_minus)[rank - 1])
        return float(self.plus(n_plus)[rank - n_minus - 1])

    def entries(self):
        """Yields ``(branch, ν, i, value)`` for every entry."""
        for branch, sign in (('minus', -1), ('plus', 1)):
            for nu in range(1, self.n + 1):
                for i, value in enumerate(self._branch(sign, nu), start=1):
                    yield branch, nu, i, float(value)


@functools.lru_cache(maxsize=32)
def build_score_table(n, phi, flavor):
    """
    Returns the (cached) score table of size ``n`` for ``phi``.
    Tables up to `STREAMING_THRESHOLD` are fully populated; larger
    ones compute and keep each configuration when first asked for it.
    """
    table = ScoreTable(n, phi, flavor)
    if table.n <= STREAMING_THRESHOLD:
        table.fill()
    return table
