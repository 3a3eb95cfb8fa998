"""
tests for signrank.testing
"""
import json

import pytest

from signrank import errors
from signrank.testing import TestResult, two_sided_p_value, two_sided_test


@pytest.mark.parametrize('z, p', [(0.0, 1.0), (1.959963984540054, 0.05),
                                  (-1.959963984540054, 0.05),
                                  (2.5758293035489, 0.01)])
def test_two_sided_p_value(z, p):
    assert two_sided_p_value(z) == pytest.approx(p, abs=1e-12)


def test_two_sided_p_value_far_tail():
    # erfc keeps precision where 1 - Φ(z) would round to zero.
    assert 0 < two_sided_p_value(12.0) < 1e-30


def test_two_sided_test():
    result = two_sided_test(2.2, alpha=0.05, name='vdw')
    assert result.reject
    assert result.statistic_name == 'vdw'
    assert not two_sided_test(1.5).reject


@pytest.mark.parametrize('z', [float('nan'), float('inf')])
def test_non_finite_statistics(z):
    with pytest.raises(errors.NonFiniteStatisticError):
        two_sided_test(z)


@pytest.mark.parametrize('alpha', [0, 1, -0.1, 1.5])
def test_alpha_range(alpha):
    with pytest.raises(errors.InvalidParameterError):
        two_sided_test(0.3, alpha=alpha)


def test_to_json():
    result = TestResult('lvdw', 1.0, 0.3173, 0.05, False)
    assert json.loads(result.to_json()) == {
        'name': 'lvdw', 'z': 1.0, 'p': 0.3173, 'alpha': 0.05,
        'reject': False}
    assert '\n' not in result.to_json()
