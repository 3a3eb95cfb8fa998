"""
tests for signrank.sync
"""
import pytest

from signrank.distributions import parse_density_spec
from signrank.sync import PowerStudy

ARGS = dict(n=30, replications=10, seed=3)


def _study():
    return PowerStudy(parse_density_spec('b'), 'vdw', (0.0, 0.3), **ARGS)


def test_run_without_a_loop_returns_curves():
    curves = _study().run()
    assert [c.statistic_name for c in curves] == ['vdw']


@pytest.mark.asyncio
async def test_run_inside_a_loop_returns_a_coroutine():
    curves = await _study().run()
    assert len(curves) == 1


def test_original_method_is_kept():
    assert getattr(PowerStudy.run, '__signrank.sync') is not None
