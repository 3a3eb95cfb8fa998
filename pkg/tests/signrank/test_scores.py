"""
tests for signrank.scores
"""
import math

import numpy as np
import pytest
from scipy import special

from signrank import errors
from signrank.scores import (
    ScoreFlavor, ScoreGeneratingFunction, ScoreTable, approx_score,
    exact_score, builtin_scores, build_score_table, BUILTIN_NAMES
)
from signrank.signsranks import decompose


def test_flavor_parse():
    assert ScoreFlavor.parse('approx') is ScoreFlavor.APPROXIMATE
    assert ScoreFlavor.parse('EXACT') is ScoreFlavor.EXACT
    assert ScoreFlavor.parse(ScoreFlavor.EXACT) is ScoreFlavor.EXACT
    with pytest.raises(errors.InvalidParameterError):
        ScoreFlavor.parse('rough')


def test_builtin_scores_lookup():
    assert builtin_scores('VDW') is builtin_scores('vdw')
    assert set(BUILTIN_NAMES) >= {'vdw', 'wilcoxon-phi', 'laplace-psi'}
    with pytest.raises(errors.UnknownScoreError):
        builtin_scores('spearman')


@pytest.mark.parametrize('name, mu_minus, mu_plus, sigma2', [
    ('vdw', -1 / math.sqrt(2 * math.pi), 1 / math.sqrt(2 * math.pi), 1.0),
    ('wilcoxon-phi', -0.25, 0.25, 1 / 3),
    ('laplace-phi', -0.5, 0.5, 1.0),
    ('laplace-psi', -0.5, 0.5, 2.0),
    ('wilcoxon-psi', -math.log(2), math.log(2), math.pi ** 2 / 3),
])
def test_builtin_moments(name, mu_minus, mu_plus, sigma2):
    phi = builtin_scores(name)
    assert phi.mu_minus == pytest.approx(mu_minus, abs=1e-9)
    assert phi.mu_plus == pytest.approx(mu_plus, abs=1e-9)
    assert phi.mu == pytest.approx(mu_minus + mu_plus, abs=1e-9)
    assert phi.sigma2 == pytest.approx(sigma2, abs=1e-8)


def test_hybrid_scores_are_continuous_at_one_half():
    for name in ('hybrid-w/vdw-phi', 'hybrid-w/vdw-psi',
                 'hybrid-l/vdw-psi'):
        phi = builtin_scores(name)
        left, right = phi([0.5 - 1e-9, 0.5 + 1e-9])
        assert left == pytest.approx(right, abs=1e-6)


def test_from_grid_interpolates():
    phi = ScoreGeneratingFunction.from_grid('ramp', [0, 0.5, 1], [-1, 0, 3])
    assert phi([0.25, 0.75]).tolist() == [-0.5, 1.5]
    assert phi.mu_minus == pytest.approx(-0.25, abs=1e-9)
    assert phi.mu_plus == pytest.approx(0.75, abs=1e-9)

    with pytest.raises(errors.InvalidParameterError):
        ScoreGeneratingFunction.from_grid('bad', [0, 0.5, 0.5], [0, 1, 2])


def test_approx_score():
    vdw = builtin_scores('vdw')
    assert approx_score((2, 2), 1, vdw) == pytest.approx(special.ndtri(1 / 6))
    assert approx_score((2, 2), 3, vdw) == pytest.approx(special.ndtri(2 / 3))
    with pytest.raises(errors.RankOutOfRangeError):
        approx_score((2, 2), 5, vdw)


def test_exact_equals_approx_for_linear_scores():
    # A table of size 100 holds the scores of every smaller sample too.
    phi = builtin_scores('wilcoxon-phi')
    exact = ScoreTable(100, phi, 'exact').fill()
    approx = ScoreTable(100, phi, 'approx').fill()
    for (_, _, _, e), (_, _, _, a) in zip(exact.entries(), approx.entries()):
        assert e == pytest.approx(a, abs=1e-9)


@pytest.mark.parametrize('N, rank, name', [
    ((3, 5), 1, 'vdw'), ((3, 5), 6, 'vdw'), ((10, 2), 10, 'vdw'),
    ((4, 4), 2, 'wilcoxon-psi'), ((7, 1), 8, 'laplace-psi'),
    ((0, 12), 12, 'hybrid-w/vdw-phi'), ((1, 0), 1, 'vdw'),
    ((25, 25), 1, 'wilcoxon-psi'), ((25, 25), 50, 'wilcoxon-psi'),
    ((6, 9), 4, 'laplace-psi'), ((6, 9), 15, 'laplace-psi'),
    ((20, 5), 20, 'vdw'), ((2, 30), 17, 'vdw'),
    ((9, 3), 5, 'hybrid-w/vdw-psi'), ((9, 3), 11, 'hybrid-w/vdw-psi'),
    ((5, 5), 3, 'hybrid-l/vdw-psi'), ((5, 5), 9, 'hybrid-l/vdw-psi'),
    ((12, 0), 1, 'hybrid-w/vdw-phi'), ((8, 8), 13, 'hybrid-l/vdw-phi'),
    ((40, 10), 33, 'wilcoxon-phi'),
])
def test_exact_scores_match_monte_carlo(N, rank, name, rng):
    phi = builtin_scores(name)
    n_minus, n_plus = N
    if rank <= n_minus:
        i, nu = rank, n_minus
        to_unit = 0.5 * rng.beta(i, nu + 1 - i, size=10 ** 6)
    else:
        i, nu = rank - n_minus, n_plus
        to_unit = 0.5 + 0.5 * rng.beta(i, nu + 1 - i, size=10 ** 6)

    draws = phi(to_unit)
    stderr = np.std(draws) / math.sqrt(draws.size)
    assert abs(exact_score(N, rank, phi) - np.mean(draws)) < 4 * stderr


def test_score_table_layout():
    table = ScoreTable(4, builtin_scores('vdw'), 'approx')
    entries = list(table.entries())
    assert len(entries) == 2 * (4 + 3 + 2 + 1)
    assert {branch for branch, *_ in entries} == {'minus', 'plus'}

    row = table.row((1, 3))
    assert len(row) == 4
    assert row[0] == table.score((1, 3), 1) == table.minus(1)[0]
    assert row[1] == table.plus(3)[0]

    with pytest.raises(errors.InvalidParameterError):
        table.row((1, 2))


def test_skew_symmetric_scores_mirror():
    table = ScoreTable(9, builtin_scores('vdw'), 'approx')
    for nu in range(1, 10):
        assert np.allclose(table.minus(nu), -table.plus(nu)[::-1],
                           atol=1e-12)


def test_build_score_table_is_cached():
    phi = builtin_scores('laplace-phi')
    first = build_score_table(6, phi, 'approx')
    assert build_score_table(6, phi, 'approx') is first
    assert first.flavor is ScoreFlavor.APPROXIMATE


def test_exact_and_approx_scores_converge_in_mean_square():
    vdw = builtin_scores('vdw')
    gaps = []
    for nu in (10, 40, 160):
        exact = ScoreTable(nu, vdw, 'exact').plus(nu)
        approx = ScoreTable(nu, vdw, 'approx').plus(nu)
        gaps.append(float(np.mean((exact - approx) ** 2)))
    assert gaps[0] > gaps[1] > gaps[2]


def _score_gap(n, seed, reps=200):
    # Normal residuals, so φ(F(Z)) is Z itself for van der Waerden scores.
    rng = np.random.default_rng(seed)
    table = build_score_table(n, builtin_scores('vdw'), 'approx')
    gaps = []
    for _ in range(reps):
        z = rng.standard_normal(n)
        d = decompose(z)
        scores = table.row(d.counts)[d.ranks - 1]
        gaps.append(float(np.mean((scores - z) ** 2)))
    return np.median(gaps)


def test_scores_approach_the_generating_function():
    gaps = [_score_gap(n, seed)
            for n, seed in ((50, 5), (200, 6), (800, 7))]
    assert gaps[0] > gaps[1] > gaps[2]
