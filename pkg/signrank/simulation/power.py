"""
Monte Carlo power of randomness tests against first-order moving
averages.

Every ``(θ, replication)`` pair draws its own innovations from its own
stream, the statistics are computed on the raw series (the residuals
under the null hypothesis ``θ = 0``) and rejections are counted.
"""
import asyncio
import concurrent.futures
import functools
import logging
from collections import OrderedDict
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .. import helpers
from ..distributions import make_density, DensityKind
from ..errors import InvalidParameterError, UnknownStatisticError
from ..serial import (
    ordinary_autocorrelation, rank_autocorrelation, signrank_autocorrelation
)
from ..testing import DEFAULT_ALPHA, two_sided_p_value
from .ma1 import ma1_filter, MIN_SERIES_LENGTH
from .streams import stream_for, check_seed

_base_log = logging.getLogger(__name__)

STUDY_THETAS = (-0.3, -0.25, -0.2, -0.15, -0.1, -0.05, 0.0,
                0.05, 0.1, 0.15, 0.2, 0.25, 0.3)
DEFAULT_N = 250
DEFAULT_REPLICATIONS = 1000
FAST_REPLICATIONS = 300


# region Statistics


@dataclass(frozen=True)
class StatisticSpec:
    name: str
    label: str
    compute: Callable


@functools.lru_cache(maxsize=None)
def _hybrid(kind):
    return make_density(kind)


def _correlogram(y):
    return ordinary_autocorrelation(y).z


def _rank(variant, y):
    return rank_autocorrelation(y, variant).z


def _signrank(kind, flavor, y):
    return signrank_autocorrelation(y, _hybrid(kind), flavor).z


STATISTICS = OrderedDict((spec.name, spec) for spec in (
    StatisticSpec('ac', 'correlogram', _correlogram),
    StatisticSpec('vdw', 'van der Waerden',
                  functools.partial(_rank, 'vdw')),
    StatisticSpec('wilcoxon', 'Wilcoxon', functools.partial(_rank, 'wilcoxon')),
    StatisticSpec('laplace', 'Laplace', functools.partial(_rank, 'laplace')),
    StatisticSpec('wvdw', 'W/vdW', functools.partial(
        _signrank, DensityKind.HYBRID_LOGISTIC_NORMAL, 'W/vdW')),
    StatisticSpec('lvdw', 'L/vdW', functools.partial(
        _signrank, DensityKind.HYBRID_LAPLACE_NORMAL, 'L/vdW')),
))


def parse_statistics(selection):
    """
    Accepts ``'all'``, a comma separated string or an iterable of names
    and returns the names in registry order.
    """
    if isinstance(selection, str):
        selection = [s.strip().lower() for s in selection.split(',')
                     if s.strip()]
    else:
        selection = [str(s).lower() for s in selection]

    if not selection:
        raise InvalidParameterError('statistics', selection,
                                    'select at least one statistic')
    if 'all' in selection:
        return tuple(STATISTICS)

    for name in selection:
        if name not in STATISTICS:
            raise UnknownStatisticError(name, list(STATISTICS))
    return tuple(name for name in STATISTICS if name in selection)


# endregion


@dataclass(frozen=True, eq=False)
class PowerCurve:
    """Rejection frequencies of one statistic over a grid of ``θ``."""
    statistic_name: str
    theta_grid: tuple
    rejection_rate: np.ndarray
    replications: int
    n: int
    alpha: float
    mc_stderr: np.ndarray
    density: str = ''

    @classmethod
    def from_counts(cls, statistic_name, theta_grid, counts, replications,
                    n, alpha, density=''):
        rate = np.asarray(counts, dtype=float) / replications
        stderr = np.sqrt(rate * (1 - rate) / replications)
        return cls(statistic_name, tuple(theta_grid), rate, replications,
                   n, alpha, stderr, density)

    def rate_at(self, theta):
        return float(self.rejection_rate[self.theta_grid.index(theta)])

    def rows(self):
        for theta, rate, stderr in zip(
                self.theta_grid, self.rejection_rate, self.mc_stderr):
            yield {
                'density': self.density,
                'statistic': self.statistic_name,
                'theta': theta,
                'rate': float(rate),
                'stderr': float(stderr),
                'reps': self.replications,
                'n': self.n,
                'alpha': self.alpha,
            }


def _replicate(task):
    """
    Runs the replications ``start..stop-1`` at one ``θ`` and returns
    ``(theta_index, rejection counts per statistic)``. Module level so
    process pools can pickle it.
    """
    (density, names, theta_index, theta, n, alpha, seed,
     start, stop, common) = task
    computes = [STATISTICS[name].compute for name in names]
    counts = [0] * len(names)
    for replication in range(start, stop):
        if common:
            rng = stream_for(seed, replication)
        else:
            rng = stream_for(seed, theta_index, replication)

        y = ma1_filter(density.sample(rng, n), theta)
        for j, compute in enumerate(computes):
            if two_sided_p_value(compute(y)) < alpha:
                counts[j] += 1

    return theta_index, counts


class PowerStudy:
    """
    A power study of randomness tests under one innovation density.

    Arguments
        density (`InnovationDensity`):
            The innovation density.

        statistics (`str` | `list`, optional):
            Names from `STATISTICS`, or ``'all'``.

        theta_grid (`tuple`, optional):
            The moving-average coefficients to simulate.

        n (`int`, optional):
            The series length.

        replications (`int`, optional):
            Series simulated per ``θ``.

        alpha (`float`, optional):
            The level of the two-sided tests.

        seed (`int`, optional):
            The root of every random stream.

        common_random_numbers (`bool`, optional):
            Whether every ``θ`` reuses the innovations of the same
            replication index, which gives smoother curves. By default
            each ``(θ, replication)`` pair draws fresh innovations.

        workers (`int`, optional):
            Worker processes. With one worker the replications run on
            a single background thread.

        chunk_size (`int`, optional):
            Replications per task handed to a worker.

        base_logger (`str` | `logging.Logger`, optional):
            Base logger name or instance to use.
            If a `str` is given, it'll be passed to `logging.getLogger()`.
            If a `logging.Logger` is given, it'll be used directly.
            If something else or nothing is given, the default logger
            will be used.
    """
    def __init__(self, density, statistics='all', theta_grid=STUDY_THETAS,
                 *, n=DEFAULT_N, replications=DEFAULT_REPLICATIONS,
                 alpha=DEFAULT_ALPHA, seed=0, common_random_numbers=False,
                 workers=1, chunk_size=50,
                 base_logger: Union[str, logging.Logger] = None):
        if int(n) != n or n < MIN_SERIES_LENGTH:
            raise InvalidParameterError(
                'n', n, 'at least {} observations'.format(MIN_SERIES_LENGTH))
        if int(replications) != replications or replications < 1:
            raise InvalidParameterError('replications', replications,
                                        'at least one replication')
        if not 0 < alpha < 1:
            raise InvalidParameterError('alpha', alpha, 'must lie in (0, 1)')
        if int(workers) != workers or workers < 1:
            raise InvalidParameterError('workers', workers,
                                        'at least one worker')
        if int(chunk_size) != chunk_size or chunk_size < 1:
            raise InvalidParameterError('chunk_size', chunk_size,
                                        'must be positive')

        theta_grid = tuple(float(t) for t in theta_grid)
        if not theta_grid:
            raise InvalidParameterError('theta_grid', theta_grid,
                                        'at least one value is needed')
        for theta in theta_grid:
            if not -1 < theta < 1:
                raise InvalidParameterError('theta', theta,
                                            'must lie in (-1, 1)')

        if isinstance(base_logger, str):
            base_logger = logging.getLogger(base_logger)
        elif not isinstance(base_logger, logging.Logger):
            base_logger = _base_log

        class _Loggers(dict):
            def __missing__(self, key):
                if key.startswith('signrank.'):
                    key = key.split('.', maxsplit=1)[1]

                return base_logger.getChild(key)

        self._log = _Loggers()

        self.density = density
        self.statistics = parse_statistics(statistics)
        self.theta_grid = theta_grid
        self.n = int(n)
        self.replications = int(replications)
        self.alpha = alpha
        self.seed = check_seed(seed)
        self.common_random_numbers = common_random_numbers
        self.workers = int(workers)
        self.chunk_size = int(chunk_size)

    def tasks(self):
        """The work units, one per ``θ`` and chunk of replications."""
        for index, theta in enumerate(self.theta_grid):
            for start in range(0, self.replications, self.chunk_size):
                stop = min(start + self.chunk_size, self.replications)
                yield (self.density, self.statistics, index, theta, self.n,
                       self.alpha, self.seed, start, stop,
                       self.common_random_numbers)

    def _executor(self):
        if self.workers == 1:
            return concurrent.futures.ThreadPoolExecutor(max_workers=1)
        return concurrent.futures.ProcessPoolExecutor(max_workers=self.workers)

    async def run(self):
        """
        Runs the study and returns one `PowerCurve` per statistic, in
        the order of `STATISTICS`.
        """
        log = self._log[__name__]
        log.info('Power study under %s: %d statistics, %d values of theta, '
                 '%d replications of n=%d', self.density,
                 len(self.statistics), len(self.theta_grid),
                 self.replications, self.n)

        loop = asyncio.get_running_loop()
        tasks = list(self.tasks())
        counts = np.zeros((len(self.theta_grid), len(self.statistics)),
                          dtype=np.int64)

        executor = self._executor()
        try:
            futures = [loop.run_in_executor(executor, _replicate, task)
                       for task in tasks]
            for done, future in enumerate(asyncio.as_completed(futures), 1):
                theta_index, chunk = await future
                # Integer sums, so completion order does not matter.
                counts[theta_index] += chunk
                log.debug('Finished %d/%d chunks', done, len(tasks))
        finally:
            executor.shutdown(wait=True)

        curves = [
            PowerCurve.from_counts(name, self.theta_grid, counts[:, j],
                                   self.replications, self.n, self.alpha,
                                   self.density.name)
            for j, name in enumerate(self.statistics)
        ]
        for curve in curves:
            log.info('%s: %s', curve.statistic_name, ', '.join(
                '{:g}={:.3f}'.format(t, r)
                for t, r in zip(curve.theta_grid, curve.rejection_rate)))
        return curves


def power_study(density, statistic_set='all', theta_grid=STUDY_THETAS,
                n=DEFAULT_N, replications=DEFAULT_REPLICATIONS,
                alpha=DEFAULT_ALPHA, seed=0, **kwargs):
    """
    Runs a `PowerStudy` to completion and returns its curves. Inside a
    running event loop, ``await PowerStudy(...).run()`` instead.
    """
    study = PowerStudy(density, statistic_set, theta_grid, n=n,
                       replications=replications, alpha=alpha, seed=seed,
                       **kwargs)
    loop = helpers.get_running_loop()
    if loop.is_running():
        raise RuntimeError('power_study cannot run inside an event loop; '
                           'await PowerStudy(...).run() instead')

    result = study.run()
    if asyncio.iscoroutine(result):
        result = loop.run_until_complete(result)
    # Otherwise signrank.sync already ran it to completion
    return result
