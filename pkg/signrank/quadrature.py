"""
Adaptive quadrature wrappers that turn QUADPACK's silent warnings into
`QuadratureError` and provide expectations under Beta laws, which is
how the expected value of a uniform order statistic is computed.
"""
import logging
import warnings

import numpy as np
from scipy import integrate, special

from .errors import QuadratureError

_log = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-10
SCORE_TOLERANCE = 1e-9


def integrate_1d(func, a, b, *, tol=DEFAULT_TOLERANCE, points=None,
                 what='', limit=500):
    """
    Integrates ``func`` over ``(a, b)`` (either end may be infinite).

    The integrand is never evaluated at the end points, so integrable
    singularities there (``ln(2u)`` or ``Φ⁻¹(u)`` near 0) are fine.

    :param tol: absolute tolerance that must be reached.
    :param points: interior break points (discontinuities, peaks).
    :raises QuadratureError: if the estimated error exceeds ``tol``.
    """
    kwargs = {}
    if points is not None and np.isfinite(a) and np.isfinite(b):
        points = sorted(p for p in points if a < p < b)
        if points:
            kwargs['points'] = points

    with warnings.catch_warnings():
        warnings.simplefilter('ignore', integrate.IntegrationWarning)
        value, error = integrate.quad(
            func, a, b, epsabs=tol / 10, epsrel=0, limit=limit, **kwargs)

    if not np.isfinite(value) or error > tol:
        raise QuadratureError(error, tol, what)

    return value


def beta_log_pdf(x, a, b):
    return (special.xlogy(a - 1, x) + special.xlog1py(b - 1, -x)
            - special.betaln(a, b))


def beta_expectation(func, a, b, *, tol=SCORE_TOLERANCE, what=''):
    """
    Returns ``E[func(X)]`` for ``X ~ Beta(a, b)`` with ``a, b >= 1``.

    For large parameters the weight is a narrow peak, so the mean and a
    few standard deviations around it are passed as break points.
    """
    mean = a / (a + b)
    sd = np.sqrt(a * b / ((a + b) ** 2 * (a + b + 1)))
    points = [mean + k * sd for k in (-8, -4, -1, 0, 1, 4, 8)]

    def integrand(x):
        return func(x) * np.exp(beta_log_pdf(x, a, b))

    return integrate_1d(integrand, 0.0, 1.0, tol=tol, points=points,
                        what=what or 'Beta({}, {}) expectation'.format(a, b))


def gauss_legendre(nodes, a, b):
    """Returns Gauss-Legendre nodes and weights mapped to ``(a, b)``."""
    x, w = np.polynomial.legendre.leggauss(nodes)
    half = (b - a) / 2
    return a + half * (x + 1), half * w
