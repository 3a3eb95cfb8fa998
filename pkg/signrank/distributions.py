"""
Innovation densities used to generate and study zero-median white noise.

Every density is exposed already standardized: its median is zero and,
for the skew-normal and mixed-normal kinds, its variance is one. The
half-composite kinds glue the negative half of one symmetric law to the
positive half of another, so their median is zero by construction.
"""
import enum
import functools
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize, special, stats

from . import quadrature
from .errors import (
    InvalidDensityError, InfiniteMeanError, QuantileDomainError
)

_log = logging.getLogger(__name__)

#: Scale of the logistic half that makes the logistic/normal hybrid continuous.
GAMMA_LOGISTIC = math.sqrt(math.pi / 8)

#: Scale of the Laplace half that makes the Laplace/normal hybrid continuous.
GAMMA_LAPLACE = math.sqrt(math.pi / 2)

_MEDIAN_XTOL = 1e-12


class DensityKind(enum.Enum):
    CAUCHY_NORMAL = 'cauchy-normal'
    T5_NORMAL = 't5-normal'
    SKEW_NORMAL = 'skew-normal'
    MIXED_NORMAL = 'mixed-normal'
    HYBRID_LOGISTIC_NORMAL = 'hybrid-logistic-normal'
    HYBRID_LAPLACE_NORMAL = 'hybrid-laplace-normal'
    STANDARD_NORMAL = 'normal'


# region Location scores -f'/f of the building blocks


def _normal_score(x):
    return x


def _cauchy_score(x):
    return 2 * x / (1 + x * x)


def _student_score(df, x):
    return (df + 1) * x / (df + x * x)


def _logistic_score(scale, x):
    return np.tanh(x / (2 * scale)) / scale


def _laplace_score(scale, x):
    return np.sign(x) / scale


# endregion

# region Raw laws


class _HalfComposite:
    """
    Negative half of ``left`` and positive half of ``right``, both laws
    symmetric about zero, so that each half carries probability 1/2.
    """
    def __init__(self, left, right, left_score, right_score, finite_mean):
        self.left = left
        self.right = right
        self.left_score = left_score
        self.right_score = right_score
        self.finite_mean = finite_mean

    def pdf(self, x):
        return np.where(x <= 0, self.left.pdf(x), self.right.pdf(x))

    def pdf_limits(self, x):
        return float(self.left.pdf(x)), float(self.right.pdf(x))

    def cdf(self, x):
        return np.where(x <= 0, self.left.cdf(x), self.right.cdf(x))

    def ppf(self, u):
        return np.where(u <= 0.5, self.left.ppf(u), self.right.ppf(u))

    def score(self, x):
        return np.where(x <= 0, self.left_score(x), self.right_score(x))

    def sample(self, rng, count):
        negative = rng.random(count) < 0.5
        v = rng.random(count)
        # (0, 1/2] on the left and [1/2, 1) on the right, never 0 or 1.
        return np.where(negative,
                        self.left.ppf(0.5 * (1 - v)),
                        self.right.ppf(0.5 + 0.5 * v))


class _SkewNormalLaw:
    finite_mean = True

    def __init__(self, shape):
        self.shape = shape
        self.delta = shape / math.sqrt(1 + shape * shape)
        self.law = stats.skewnorm(shape)

    @property
    def mean(self):
        return self.delta * math.sqrt(2 / math.pi)

    @property
    def variance(self):
        return 1 - 2 * self.delta ** 2 / math.pi

    def pdf(self, x):
        return self.law.pdf(x)

    def pdf_limits(self, x):
        value = float(self.law.pdf(x))
        return value, value

    def cdf(self, x):
        return self.law.cdf(x)

    def ppf(self, u):
        x = np.asarray(self.law.ppf(u), dtype=float)
        # A couple of Newton steps so cdf(ppf(u)) = u to 1e-12.
        for _ in range(3):
            density = self.law.pdf(x)
            step = np.where(density > 0,
                            (self.law.cdf(x) - u) / np.where(density > 0, density, 1),
                            0.0)
            x = x - step
        return x

    def score(self, x):
        t = self.shape * x
        ratio = np.exp(stats.norm.logpdf(t) - special.log_ndtr(t))
        return x - self.shape * ratio

    def sample(self, rng, count):
        z0 = rng.standard_normal(count)
        z1 = rng.standard_normal(count)
        return self.delta * np.abs(z0) + math.sqrt(1 - self.delta ** 2) * z1


class _NormalMixture:
    """``weight`` N(0, 1) + (1 - ``weight``) N(``mean2``, ``variance2``)."""
    finite_mean = True

    def __init__(self, weight, mean2, variance2):
        self.weight = weight
        self.mean2 = mean2
        self.sd2 = math.sqrt(variance2)

    @property
    def mean(self):
        return (1 - self.weight) * self.mean2

    @property
    def variance(self):
        w = self.weight
        return w + (1 - w) * self.sd2 ** 2 + w * (1 - w) * self.mean2 ** 2

    def _components(self, x):
        first = self.weight * stats.norm.pdf(x)
        second = (1 - self.weight) * stats.norm.pdf(
            x, loc=self.mean2, scale=self.sd2)
        return first, second

    def pdf(self, x):
        first, second = self._components(x)
        return first + second

    def pdf_limits(self, x):
        value = float(self.pdf(x))
        return value, value

    def cdf(self, x):
        return (self.weight * special.ndtr(x) + (1 - self.weight)
                * special.ndtr((x - self.mean2) / self.sd2))

    def _ppf_scalar(self, u):
        q1 = special.ndtri(u)
        q2 = self.mean2 + self.sd2 * q1
        lo, hi = min(q1, q2), max(q1, q2)
        if lo == hi:
            return lo
        # The mixture quantile lies between the component quantiles.
        return optimize.brentq(lambda x: self.cdf(x) - u, lo, hi,
                               xtol=1e-14, rtol=4 * np.finfo(float).eps)

    def ppf(self, u):
        u = np.asarray(u, dtype=float)
        out = np.vectorize(self._ppf_scalar, otypes=[float])(u)
        return out if out.ndim else float(out)

    def score(self, x):
        first, second = self._components(x)
        return (first * x + second * (x - self.mean2) / self.sd2 ** 2) \
            / (first + second)

    def sample(self, rng, count):
        first = rng.random(count) < self.weight
        z = rng.standard_normal(count)
        return np.where(first, z, self.mean2 + self.sd2 * z)


def _raw_median(law):
    lo, hi = -1.0, 1.0
    while law.cdf(lo) > 0.5:
        lo *= 2
    while law.cdf(hi) < 0.5:
        hi *= 2
    return optimize.brentq(lambda x: float(law.cdf(x)) - 0.5, lo, hi,
                           xtol=_MEDIAN_XTOL)


# endregion


@dataclass(frozen=True, eq=False)
class InnovationDensity:
    """
    A standardized innovation density. Build instances with
    `make_density` or `parse_density_spec` rather than directly.

    If ``X`` follows the raw law, the density describes
    ``Z = (X - shift) / scale``.
    """
    kind: DensityKind
    params: tuple
    shift: float
    scale: float
    _law: object = field(repr=False)

    @property
    def name(self):
        if not self.params:
            return self.kind.value
        return '{}:{}'.format(
            self.kind.value, ','.join('{:g}'.format(p) for p in self.params))

    def __str__(self):
        return self.name

    def _raw(self, z):
        return self.shift + self.scale * np.asarray(z, dtype=float)

    def pdf(self, z):
        return self.scale * self._law.pdf(self._raw(z))

    def cdf(self, z):
        return self._law.cdf(self._raw(z))

    def quantile(self, u):
        u = np.asarray(u, dtype=float)
        if np.any((u <= 0) | (u >= 1)) or np.any(np.isnan(u)):
            raise QuantileDomainError(u.tolist())
        return (self._law.ppf(u) - self.shift) / self.scale

    def location_score(self, z):
        """The location score ``-f'(z)/f(z)``."""
        return self.scale * self._law.score(self._raw(z))

    def sample(self, rng, count):
        if count == 0:
            return np.empty(0)
        return (self._law.sample(rng, count) - self.shift) / self.scale

    @property
    def pdf_limits_at_zero(self):
        """The one-sided limits ``(f(0-), f(0+))``."""
        left, right = self._law.pdf_limits(self.shift)
        return self.scale * left, self.scale * right

    @functools.cached_property
    def f0(self):
        return sum(self.pdf_limits_at_zero) / 2

    @functools.cached_property
    def mu_f(self):
        if not self._law.finite_mean:
            raise InfiniteMeanError(self.name, f0=self.f0)

        def first_moment(z):
            return z * self.pdf(z)

        return (quadrature.integrate_1d(first_moment, -np.inf, 0.0)
                + quadrature.integrate_1d(first_moment, 0.0, np.inf))


def _finite(name, value):
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise InvalidDensityError('{} must be a number, got {!r}'.format(
            name, value)) from None
    if not math.isfinite(value):
        raise InvalidDensityError('{} must be finite, got {!r}'.format(
            name, value))
    return value


def make_density(kind, params=()):
    """
    Builds a standardized density.

    Arguments
        kind (`DensityKind` | `str`):
            The family, either the enumeration member or its value,
            such as ``'skew-normal'``.

        params (`tuple`, optional):
            ``(λ,)`` for the skew normal; ``(w, m2, s2²)`` for the
            mixed normal; optionally ``(γ,)`` for the two hybrids,
            which otherwise use the scale that makes them continuous
            at zero. The other kinds take no parameters.
    """
    try:
        kind = DensityKind(kind)
    except ValueError:
        raise InvalidDensityError('unknown kind {!r}'.format(kind)) from None

    params = tuple(_finite('parameter', p) for p in params)
    expected = {
        DensityKind.SKEW_NORMAL: (1,),
        DensityKind.MIXED_NORMAL: (3,),
        DensityKind.HYBRID_LOGISTIC_NORMAL: (0, 1),
        DensityKind.HYBRID_LAPLACE_NORMAL: (0, 1),
    }.get(kind, (0,))
    if len(params) not in expected:
        raise InvalidDensityError('{} takes {} parameter(s), got {}'.format(
            kind.value, ' or '.join(map(str, expected)), len(params)))

    normal = stats.norm()
    shift, scale = 0.0, 1.0
    if kind == DensityKind.CAUCHY_NORMAL:
        law = _HalfComposite(stats.cauchy(), normal,
                             _cauchy_score, _normal_score, finite_mean=False)
    elif kind == DensityKind.T5_NORMAL:
        law = _HalfComposite(stats.t(5), normal,
                             functools.partial(_student_score, 5),
                             _normal_score, finite_mean=True)
    elif kind == DensityKind.STANDARD_NORMAL:
        law = _HalfComposite(normal, normal,
                             _normal_score, _normal_score, finite_mean=True)
    elif kind == DensityKind.HYBRID_LOGISTIC_NORMAL:
        gamma = params[0] if params else GAMMA_LOGISTIC
        if gamma <= 0:
            raise InvalidDensityError('the scale must be positive')
        params = (gamma,) if params else ()
        law = _HalfComposite(stats.logistic(scale=gamma), normal,
                             functools.partial(_logistic_score, gamma),
                             _normal_score, finite_mean=True)
    elif kind == DensityKind.HYBRID_LAPLACE_NORMAL:
        gamma = params[0] if params else GAMMA_LAPLACE
        if gamma <= 0:
            raise InvalidDensityError('the scale must be positive')
        params = (gamma,) if params else ()
        law = _HalfComposite(stats.laplace(scale=gamma), normal,
                             functools.partial(_laplace_score, gamma),
                             _normal_score, finite_mean=True)
    elif kind == DensityKind.SKEW_NORMAL:
        law = _SkewNormalLaw(params[0])
        shift, scale = _raw_median(law), math.sqrt(law.variance)
    else:
        weight, mean2, variance2 = params
        if not 0 < weight < 1:
            raise InvalidDensityError('the weight must lie in (0, 1)')
        if variance2 <= 0:
            raise InvalidDensityError('the variance must be positive')
        law = _NormalMixture(weight, mean2, variance2)
        shift, scale = _raw_median(law), math.sqrt(law.variance)

    _log.debug('Built %s density (shift=%r, scale=%r)',
               kind.value, shift, scale)
    return InnovationDensity(kind, params, shift, scale, law)


#: The six innovation densities of the power study, by letter.
STUDY_DENSITIES = {
    'a': 'cauchy-normal',
    'b': 't5-normal',
    'c': 'skew-normal:-10',
    'd': 'skew-normal:-20',
    'e': 'mixed-normal:0.5,-5,2',
    'f': 'mixed-normal:0.75,-5,1',
}


def parse_density_spec(text):
    """
    Parses strings such as ``'skew-normal:-10'``, ``'mixed-normal:0.5,-5,2'``
    or one of the letters of `STUDY_DENSITIES`.
    """
    text = text.strip()
    text = STUDY_DENSITIES.get(text.lower(), text)
    kind, _, rest = text.partition(':')
    params = tuple(p for p in rest.split(',') if p.strip()) if rest else ()
    return make_density(kind.strip().lower(), params)


# region Functional interface


def density_pdf(d, z):
    return d.pdf(z)


def density_cdf(d, z):
    return d.cdf(z)


def density_quantile(d, u):
    return d.quantile(u)


def density_sample(d, rng, count):
    return d.sample(rng, count)


def density_location_score(d, z):
    return d.location_score(z)


def density_f0_mu(d):
    """
    Returns ``(f(0), μ_f)``. When the mean does not exist the raised
    `InfiniteMeanError` still carries ``f0``.
    """
    return d.f0, d.mu_f


def density_score_functions(d):
    """
    Returns the score-generating functions ``(φ_f, ψ_f)`` where
    ``φ_f(u) = -f'/f(F⁻¹(u))`` and ``ψ_f(u) = F⁻¹(u)``.
    """
    from . import scores

    if not d.params:
        if d.kind == DensityKind.HYBRID_LOGISTIC_NORMAL:
            return (scores.builtin_scores('hybrid-w/vdw-phi'),
                    scores.builtin_scores('hybrid-w/vdw-psi'))
        if d.kind == DensityKind.HYBRID_LAPLACE_NORMAL:
            return (scores.builtin_scores('hybrid-l/vdw-phi'),
                    scores.builtin_scores('hybrid-l/vdw-psi'))

    return (
        scores.ScoreGeneratingFunction.from_callable(
            'phi[{}]'.format(d.name),
            functools.partial(_composed_location_score, d)),
        scores.ScoreGeneratingFunction.from_callable(
            'psi[{}]'.format(d.name), d.quantile),
    )


def _composed_location_score(d, u):
    return d.location_score(d.quantile(u))


# endregion
