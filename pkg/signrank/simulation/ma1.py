"""First-order moving averages ``Yₜ = εₜ + θ εₜ₋₁`` started at ``ε₀ = 0``."""
from dataclasses import dataclass

import numpy as np
from scipy import signal

from ..distributions import InnovationDensity
from ..errors import InvalidParameterError
from .streams import check_seed, stream_for

MIN_SERIES_LENGTH = 8


def _check_theta(theta):
    if not -1 < theta < 1:
        raise InvalidParameterError('theta', theta, 'must lie in (-1, 1)')


@dataclass(frozen=True)
class MA1Config:
    theta: float
    n: int
    density: InnovationDensity
    seed: int = 0

    def __post_init__(self):
        _check_theta(self.theta)
        if int(self.n) != self.n or self.n < MIN_SERIES_LENGTH:
            raise InvalidParameterError(
                'n', self.n, 'at least {} observations'.format(
                    MIN_SERIES_LENGTH))
        check_seed(self.seed)


def ma1_filter(eps, theta):
    """Returns ``Y`` for the given innovations."""
    return signal.lfilter([1.0, theta], [1.0], np.asarray(eps, dtype=float))


def simulate_ma1(cfg, rng=None):
    """
    Draws ``cfg.n`` innovations and filters them. Without ``rng``, the
    innovations come from the root stream of ``cfg.seed``.
    """
    if rng is None:
        rng = stream_for(cfg.seed)
    return ma1_filter(cfg.density.sample(rng, cfg.n), cfg.theta)


def ma1_residuals(y, theta):
    """
    Inverts the moving average: ``Zₜ = Yₜ - θ Zₜ₋₁`` with ``Z₀ = 0``,
    which is the recursive filter ``1 / (1 + θ B)``.
    """
    _check_theta(theta)
    return signal.lfilter([1.0], [1.0, theta], np.asarray(y, dtype=float))
