"""
tests for signrank.distributions
"""
import math

import numpy as np
import pytest
from scipy import stats

from signrank import errors, distributions
from signrank.distributions import (
    DensityKind, make_density, parse_density_spec, STUDY_DENSITIES,
    GAMMA_LOGISTIC, GAMMA_LAPLACE
)

SQRT_2PI = math.sqrt(2 * math.pi)

ALL_DENSITIES = sorted(STUDY_DENSITIES) + [
    'normal', 'hybrid-logistic-normal', 'hybrid-laplace-normal']


@pytest.mark.parametrize('spec', ALL_DENSITIES)
def test_median_is_zero(spec):
    d = parse_density_spec(spec)
    assert float(d.cdf(0.0)) == pytest.approx(0.5, abs=1e-9)
    assert float(d.quantile(0.5)) == pytest.approx(0.0, abs=1e-9)


@pytest.mark.parametrize('spec', ALL_DENSITIES)
def test_quantile_inverts_cdf(spec):
    d = parse_density_spec(spec)
    u = np.array([0.001, 0.1, 0.3, 0.45, 0.55, 0.7, 0.9, 0.999])
    assert np.allclose(d.cdf(d.quantile(u)), u, rtol=0, atol=1e-9)


@pytest.mark.parametrize('spec', ['c', 'd', 'e', 'f'])
def test_location_score_is_log_density_slope(spec):
    d = parse_density_spec(spec)
    z = np.array([-1.5, -0.4, 0.3, 1.2])
    h = 1e-5
    slope = (np.log(d.pdf(z + h)) - np.log(d.pdf(z - h))) / (2 * h)
    assert np.allclose(d.location_score(z), -slope, rtol=1e-5, atol=1e-6)


def test_half_composite_limits_at_zero():
    left, right = parse_density_spec('a').pdf_limits_at_zero
    assert left == pytest.approx(1 / math.pi)
    assert right == pytest.approx(1 / SQRT_2PI)
    assert parse_density_spec('a').f0 == pytest.approx(
        (1 / math.pi + 1 / SQRT_2PI) / 2)


@pytest.mark.parametrize('kind', [DensityKind.HYBRID_LOGISTIC_NORMAL,
                                  DensityKind.HYBRID_LAPLACE_NORMAL])
def test_hybrids_are_continuous_at_zero(kind):
    left, right = make_density(kind).pdf_limits_at_zero
    assert left == pytest.approx(right, abs=1e-12)
    assert make_density(kind).f0 == pytest.approx(1 / SQRT_2PI, abs=1e-12)


@pytest.mark.parametrize('kind, mu_f', [
    ('normal', 0.0),
    ('hybrid-logistic-normal', 1 / SQRT_2PI - GAMMA_LOGISTIC * math.log(2)),
    ('hybrid-laplace-normal', 1 / SQRT_2PI - GAMMA_LAPLACE / 2),
])
def test_mu_f(kind, mu_f):
    assert make_density(kind).mu_f == pytest.approx(mu_f, abs=1e-9)


def test_cauchy_half_has_no_mean():
    d = parse_density_spec('cauchy-normal')
    with pytest.raises(errors.InfiniteMeanError) as info:
        distributions.density_f0_mu(d)
    assert info.value.f0 == pytest.approx(d.f0)


def test_normal_location_score():
    d = make_density('normal')
    z = np.linspace(-3, 3, 7)
    assert np.allclose(d.location_score(z), z)


@pytest.mark.parametrize('spec', ['a', 'c', 'e'])
def test_samples_have_zero_median(spec, rng):
    draws = parse_density_spec(spec).sample(rng, 200000)
    assert abs(np.median(draws)) < 0.02


def test_standardized_densities_have_unit_variance(rng):
    for spec in ('c', 'd', 'f'):
        draws = parse_density_spec(spec).sample(rng, 200000)
        assert np.var(draws) == pytest.approx(1.0, abs=0.02)


def test_sample_edge_cases(rng):
    d = parse_density_spec('b')
    assert d.sample(rng, 0).shape == (0,)
    first = d.sample(np.random.default_rng(3), 5)
    assert np.array_equal(first, d.sample(np.random.default_rng(3), 5))


@pytest.mark.parametrize('u', [0.0, 1.0, -0.2, float('nan')])
def test_quantile_domain(u):
    with pytest.raises(errors.QuantileDomainError):
        parse_density_spec('b').quantile(u)


def test_parse_density_spec():
    assert parse_density_spec('c').name == 'skew-normal:-10'
    assert parse_density_spec('E').name == 'mixed-normal:0.5,-5,2'
    assert parse_density_spec(' t5-normal ').kind is DensityKind.T5_NORMAL
    assert parse_density_spec('hybrid-laplace-normal:2').params == (2.0,)


@pytest.mark.parametrize('spec', [
    'lognormal', 'skew-normal', 'skew-normal:1,2', 'mixed-normal:1.5,-5,2',
    'mixed-normal:0.5,-5,0', 'mixed-normal:0.5,-5,x', 'cauchy-normal:1',
    'hybrid-logistic-normal:-1', 'skew-normal:inf',
])
def test_invalid_density_specs(spec):
    with pytest.raises(errors.InvalidDensityError):
        parse_density_spec(spec)


def test_density_score_functions():
    phi, psi = distributions.density_score_functions(
        make_density('hybrid-laplace-normal'))
    assert phi.name == 'hybrid-l/vdw-phi'
    assert psi.name == 'hybrid-l/vdw-psi'

    d = parse_density_spec('c')
    phi, psi = distributions.density_score_functions(d)
    u = np.array([0.2, 0.5, 0.8])
    assert np.allclose(psi(u), d.quantile(u))
    assert np.allclose(phi(u), d.location_score(d.quantile(u)))


def test_functional_interface_matches_methods():
    d = parse_density_spec('e')
    z = np.array([-1.5, -0.2, 0.3, 2.0])
    assert np.array_equal(distributions.density_pdf(d, z), d.pdf(z))
    assert np.array_equal(distributions.density_cdf(d, z), d.cdf(z))
    assert np.array_equal(distributions.density_location_score(d, z),
                          d.location_score(z))
    u = np.array([0.1, 0.5, 0.9])
    assert np.array_equal(distributions.density_quantile(d, u),
                          d.quantile(u))

    first = distributions.density_sample(d, np.random.default_rng(3), 5)
    second = d.sample(np.random.default_rng(3), 5)
    assert np.array_equal(first, second)


@pytest.mark.parametrize('seed, spec', list(enumerate(ALL_DENSITIES)))
def test_samples_follow_the_cdf(seed, spec):
    d = parse_density_spec(spec)
    sample = distributions.density_sample(d, np.random.default_rng(seed),
                                          10 ** 4)
    result = stats.kstest(sample,
                          lambda z: distributions.density_cdf(d, z))
    assert result.pvalue > 0.001
