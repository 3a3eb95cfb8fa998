"""
Serial kernels ``φ_k(u₀, …, u_k)`` and the integrals that standardize
the statistics built from them.

``u₀`` is always the value at the current time ``t`` and ``u_k`` the one
at ``t - k``.
"""
import functools
import itertools
import logging
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

import numpy as np

from .. import quadrature
from ..errors import InvalidParameterError

_log = logging.getLogger(__name__)

#: Gauss-Legendre nodes per half axis for kernels without product form.
GRID_NODES = 64

#: Kernels without product form are integrated on grids of this dimension.
MAX_GRID_DIMENSION = 3


class KernelMoments(NamedTuple):
    """
    ``mu`` is the integral of the kernel over the unit cube and
    ``mu_nu[ν]`` the sum of its integrals over the boxes where exactly
    ``ν`` coordinates exceed 1/2 (``boxes`` holds each of those boxes,
    keyed by the sign pattern). ``V2`` is the asymptotic variance of the
    conditionally centered statistic and ``uncond_extra`` what the sign
    counts add to it unconditionally.
    """
    mu: float
    mu_nu: tuple
    V2: float
    uncond_extra: float
    boxes: dict


def _product_eval(phi, psi, *u):
    return phi(u[0]) * psi(u[-1])


@dataclass(frozen=True, eq=False)
class SerialKernel:
    k: int
    func: Callable
    product_form: Optional[tuple] = None
    name: str = ''

    @classmethod
    def product(cls, phi, psi, k=1):
        """The kernel ``φ(u₀) ψ(u_k)`` of a lag-``k`` autocorrelation."""
        _check_order(k)
        return cls(k, functools.partial(_product_eval, phi, psi), (phi, psi),
                   '{}*{}'.format(phi.name, psi.name))

    @classmethod
    def from_callable(cls, k, func, name=''):
        """
        A general kernel; ``func`` receives ``k + 1`` arrays of the same
        shape and must be vectorized over them.
        """
        _check_order(k)
        if k + 1 > MAX_GRID_DIMENSION:
            raise InvalidParameterError(
                'k', k, 'general kernels support k + 1 <= {}'.format(
                    MAX_GRID_DIMENSION))
        return cls(k, func, None, name or getattr(func, '__name__', ''))

    def __call__(self, *u):
        return self.func(*u)

    def __repr__(self):
        return 'SerialKernel(k={}, {!r})'.format(self.k, self.name)

    @property
    def skew_symmetric(self):
        if self.product_form is None:
            return False
        phi, psi = self.product_form
        return phi.skew_symmetric and psi.skew_symmetric

    @functools.cached_property
    def moments(self):
        _log.debug('Computing moments of %r', self)
        if self.product_form is not None:
            return _product_moments(self.k, *self.product_form)
        return _grid_moments(self)

    @property
    def mu(self):
        return self.moments.mu

    @property
    def mu_nu(self):
        return self.moments.mu_nu

    @property
    def V2(self):
        return self.moments.V2

    @property
    def uncond_extra(self):
        return self.moments.uncond_extra


def _check_order(k):
    if int(k) != k or k < 1:
        raise InvalidParameterError('k', k, 'the order must be >= 1')


def _assemble(k, boxes, V2):
    mu_nu = [0.0] * (k + 2)
    for pattern, value in boxes.items():
        mu_nu[sum(1 for s in pattern if s > 0)] += value
    mu = sum(mu_nu)
    bracket = mu - 2 * sum(nu * m for nu, m in enumerate(mu_nu)) / (k + 1)
    return KernelMoments(mu, tuple(mu_nu), max(V2, 0.0),
                         (k + 1) ** 2 * bracket ** 2, boxes)


def _product_moments(k, phi, psi):
    # Middle coordinates only contribute the length 1/2 of their side.
    middle = 0.5 ** (k - 1)
    halves = {-1: (phi.mu_minus, psi.mu_minus), 1: (phi.mu_plus, psi.mu_plus)}
    boxes = {}
    for pattern in itertools.product((-1, 1), repeat=k + 1):
        boxes[pattern] = (halves[pattern[0]][0] * halves[pattern[-1]][1]
                          * middle)

    # φ* = (φ(u₀) - μ_φ)(ψ(u_k) - μ_ψ); two lagged copies share at most
    # one coordinate, so every cross term carries a zero factor.
    return _assemble(k, boxes, phi.sigma2 * psi.sigma2)


def _grid_moments(kernel):
    k = kernel.k
    lower = quadrature.gauss_legendre(GRID_NODES, 0.0, 0.5)
    upper = quadrature.gauss_legendre(GRID_NODES, 0.5, 1.0)
    nodes = np.concatenate([lower[0], upper[0]])
    weights = np.concatenate([lower[1], upper[1]])
    dim = k + 1

    grid = np.meshgrid(*([nodes] * dim), indexing='ij')
    values = np.asarray(kernel(*grid), dtype=float)
    if values.shape != grid[0].shape:
        values = np.broadcast_to(values, grid[0].shape)

    def integrate(array, axes):
        # Contract the given axes (highest first) against the weights.
        for axis in sorted(axes, reverse=True):
            array = np.tensordot(array, weights, axes=([axis], [0]))
        return array

    halves = {-1: slice(0, GRID_NODES), 1: slice(GRID_NODES, 2 * GRID_NODES)}
    boxes = {}
    for pattern in itertools.product((-1, 1), repeat=dim):
        total = values[tuple(halves[s] for s in pattern)]
        for s in reversed(pattern):
            total = np.tensordot(total, weights[halves[s]], axes=([-1], [0]))
        boxes[pattern] = float(total)

    mu = float(integrate(values, range(dim)))
    centered = values + k * mu
    for axis in range(dim):
        others = [a for a in range(dim) if a != axis]
        conditional = integrate(values, others)
        shape = [1] * dim
        shape[axis] = -1
        centered = centered - conditional.reshape(shape)

    v2 = float(integrate(centered ** 2, range(dim)))
    for lag in range(1, k + 1):
        # The first copy shares its leading coordinates with the trailing
        # ones of the copy shifted by ``lag``.
        first = integrate(centered, range(dim - lag, dim))
        second = centered
        for _ in range(lag):
            second = np.tensordot(weights, second, axes=([0], [0]))
        v2 += 2 * float(integrate(first * second, range(dim - lag)))

    return _assemble(k, boxes, v2)


def kernel_moments(kernel):
    """Returns the `KernelMoments` of ``kernel`` (cached on it)."""
    return kernel.moments
