"""Two-sided randomness tests based on asymptotically normal statistics"""
import json
import math
from dataclasses import dataclass

from scipy import special

from .errors import NonFiniteStatisticError, InvalidParameterError

DEFAULT_ALPHA = 0.05


@dataclass(frozen=True)
class TestResult:
    statistic_name: str
    z: float
    p_value: float
    alpha: float
    reject: bool

    # Not a test case, despite the name.
    __test__ = False

    def to_dict(self):
        return {
            'name': self.statistic_name,
            'z': self.z,
            'p': self.p_value,
            'alpha': self.alpha,
            'reject': self.reject,
        }

    def to_json(self):
        return json.dumps(self.to_dict())


def two_sided_p_value(z):
    """``2 (1 - Φ(|z|))``, computed as ``erfc(|z|/√2)`` to avoid cancellation."""
    return float(special.erfc(abs(z) / math.sqrt(2)))


def two_sided_test(z, alpha=DEFAULT_ALPHA, name=''):
    """
    Tests ``z`` against the standard normal, rejecting for large ``|z|``.

    :raises NonFiniteStatisticError: if ``z`` is infinite or NaN.
    """
    if not 0 < alpha < 1:
        raise InvalidParameterError('alpha', alpha, 'must lie in (0, 1)')
    z = float(z)
    if not math.isfinite(z):
        raise NonFiniteStatisticError(z)

    p_value = two_sided_p_value(z)
    return TestResult(name, z, p_value, alpha, p_value < alpha)
