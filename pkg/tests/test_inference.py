from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import replay_law
from urnshock import (
    BetaStacySpec,
    FailureRecord,
    RngStream,
    RupConfig,
    StateGrid,
    UnknownStateError,
    beta_stacy_posterior,
    beta_stacy_prior,
    first_system_pmf,
    mean_cdf,
    predictive_distribution,
    predictive_mean,
    predictive_pmf,
    predictive_survival,
    sample_cdf,
    sample_cdfs,
    sufficient_counts,
)


def symmetric(n, s=1.0):
    return RupConfig.uniform(StateGrid.range(n), 1, 1, s)


@st.composite
def configs_and_records(draw, max_states=16, integer=False):
    n = draw(st.integers(1, max_states))
    if integer:
        pos = st.integers(1, 20)
        nonneg = st.integers(0, 20)
    else:
        pos = st.floats(0.01, 50)
        nonneg = st.floats(0, 50)
    priors = []
    for _ in range(n):
        w = draw(nonneg)
        b = draw(pos) if w == 0 else draw(nonneg)
        priors.append((w, b))
    # powers of two keep b / s exact, so shape arithmetic stays exact
    s = draw(st.sampled_from([1, 2, 4]) if integer else st.floats(0.05, 10))
    obs = draw(st.lists(st.integers(0, n - 1), max_size=25))
    grid = StateGrid.range(n)
    return RupConfig(grid, tuple(priors), s), FailureRecord(grid, tuple(obs))


def test_sufficient_counts_examples():
    g = StateGrid.range(5)
    c = sufficient_counts(FailureRecord(g, (1, 1, 3)))
    assert c.f.tolist() == [3, 1, 1, 0, 0]
    assert c.d.tolist() == [0, 2, 0, 1, 0]
    c = sufficient_counts(FailureRecord(g))
    assert c.f.tolist() == [0] * 5 and c.d.tolist() == [0] * 5
    c = sufficient_counts(FailureRecord(g, (0,)))
    assert c.f.tolist() == [0] * 5 and c.d.tolist() == [1, 0, 0, 0, 0]


def test_off_grid_observation():
    with pytest.raises(UnknownStateError) as e:
        FailureRecord(StateGrid.range(3), (3,))
    assert e.value.code == "unknown-state"


def brute_counts(record, n):
    f = [sum(1 for x in record.indices if l < x) for l in range(n)]
    d = [sum(1 for x in record.indices if l == x) for l in range(n)]
    return f, d


@given(configs_and_records())
def test_sufficient_counts_invariants(cr):
    cfg, rec = cr
    c = sufficient_counts(rec)
    f, d = brute_counts(rec, len(cfg.grid))
    assert c.f.tolist() == f and c.d.tolist() == d
    assert np.all(c.f + np.cumsum(c.d) == rec.m)
    assert np.all(np.diff(c.f) <= 0)


def test_predictive_examples():
    cfg = symmetric(4)
    empty = FailureRecord(cfg.grid)
    assert predictive_pmf(cfg, empty, 2) == 0.125
    assert predictive_survival(cfg, empty, 2) == 0.125
    rec = FailureRecord(cfg.grid, (1,))
    assert predictive_pmf(cfg, rec, 0) == pytest.approx(1 / 3, abs=1e-15)
    assert predictive_pmf(cfg, rec, 1) == pytest.approx(4 / 9, abs=1e-15)
    assert predictive_survival(cfg, rec, 1) == pytest.approx(2 / 9, abs=1e-15)
    law = replay_law([(1, 1)] * 4, 1, [1])
    assert law[:2] == [Fraction(1, 3), Fraction(4, 9)]
    assert 1 - sum(law[:2]) == Fraction(2, 9)


def test_predictive_zero_numerator():
    cfg = RupConfig(StateGrid.range(3), ((1, 1), (1, 0), (1, 1)), 1)
    assert predictive_pmf(cfg, FailureRecord(cfg.grid, (0, 2)), 1) == 0.0


def test_no_failure_possible():
    cfg = RupConfig(StateGrid.range(4), ((1, 0),) * 4, 2)
    assert predictive_survival(cfg, FailureRecord(cfg.grid), 3) == 1.0


def test_off_grid_index():
    cfg = symmetric(3)
    with pytest.raises(UnknownStateError):
        predictive_pmf(cfg, FailureRecord(cfg.grid), 3)
    with pytest.raises(UnknownStateError):
        predictive_survival(cfg, FailureRecord(cfg.grid), -1)


@given(configs_and_records(max_states=8, integer=True))
@settings(max_examples=100)
def test_predictive_matches_exact_replay(cr):
    cfg, rec = cr
    pairs = [(int(p.white), int(p.black)) for p in cfg.priors]
    law = replay_law(pairs, int(cfg.s), rec.indices)
    dist = predictive_distribution(cfg, rec)
    assert np.allclose(dist.pmf, [float(x) for x in law[:-1]], rtol=0, atol=1e-14)
    assert dist.tail == pytest.approx(float(law[-1]), abs=1e-14)


@given(configs_and_records())
def test_normalization_and_consistency(cr):
    cfg, rec = cr
    dist = predictive_distribution(cfg, rec)
    assert abs(dist.pmf.sum() + dist.tail - 1) < 1e-12
    assert np.all((dist.pmf >= 0) & (dist.pmf <= 1))
    assert np.allclose(dist.survival, 1 - np.cumsum(dist.pmf), rtol=0, atol=1e-12)


@given(configs_and_records(), st.randoms())
def test_order_invariance(cr, rnd):
    cfg, rec = cr
    shuffled = list(rec.indices)
    rnd.shuffle(shuffled)
    a = predictive_distribution(cfg, rec)
    b = predictive_distribution(cfg, FailureRecord(cfg.grid, tuple(shuffled)))
    assert np.array_equal(a.pmf, b.pmf) and np.array_equal(a.survival, b.survival)


def test_first_system_law_is_m0_predictive():
    cfg = RupConfig(StateGrid.range(5), ((3, 1), (1, 2), (0.5, 0.5), (4, 1), (1, 1)), 1.5)
    assert np.array_equal(first_system_pmf(cfg), predictive_distribution(cfg).pmf)
    assert np.array_equal(
        predictive_distribution(cfg).pmf, predictive_distribution(cfg, FailureRecord(cfg.grid)).pmf
    )


def test_log_space_long_grid():
    n = 120
    priors = [(3 + i % 5, 1 + i % 3) for i in range(n)]
    cfg = RupConfig(StateGrid.range(n), tuple(priors), 1)
    rec = FailureRecord(cfg.grid, (2, 40, 40, 119))
    law = replay_law(priors, 1, rec.indices)
    dist = predictive_distribution(cfg, rec)
    assert np.allclose(dist.pmf, [float(x) for x in law[:-1]], rtol=1e-12, atol=1e-300)
    assert abs(dist.pmf.sum() + dist.tail - 1) < 1e-12


def test_predictive_mean_examples():
    cfg = symmetric(4)
    mean, tail = predictive_mean(cfg, FailureRecord(cfg.grid))
    assert mean == 0.6875 and tail == 1 / 16
    cfg = RupConfig(StateGrid.range(3), ((0, 1e9), (1, 1), (1, 1)), 1)
    mean, tail = predictive_mean(cfg, FailureRecord(cfg.grid))
    assert mean == 0 and tail == 0


def test_predictive_mean_append_vs_scratch():
    cfg = RupConfig(StateGrid((10, 20, 30, 40)), ((2, 1), (1, 1), (1, 2), (0, 1)), 0.7)
    rec = FailureRecord(cfg.grid, (2, 0, 3))
    appended = rec.append(1)
    scratch = FailureRecord(cfg.grid, (1, 3, 0, 2))
    assert predictive_mean(cfg, appended) == predictive_mean(cfg, scratch)


def test_beta_stacy_prior_examples():
    spec = beta_stacy_prior(symmetric(3))
    assert spec.failure.tolist() == [1, 1, 1] and spec.survival.tolist() == [1, 1, 1]
    spec = beta_stacy_prior(RupConfig(StateGrid.range(1), ((3, 1),), 1))
    assert spec.hazard_mean[0] == 0.25
    spec = beta_stacy_prior(RupConfig.uniform(StateGrid.range(2), 2, 2, 2))
    assert spec.failure.tolist() == [1, 1] and spec.survival.tolist() == [1, 1]


def test_beta_stacy_posterior_example():
    cfg = symmetric(3)
    post = beta_stacy_posterior(beta_stacy_prior(cfg), FailureRecord(cfg.grid, (1,)), 1)
    assert (post.failure[0], post.survival[0]) == (1, 2)
    assert (post.failure[1], post.survival[1]) == (2, 1)
    assert (post.failure[2], post.survival[2]) == (1, 1)
    prior = beta_stacy_prior(cfg)
    assert beta_stacy_posterior(prior, FailureRecord(cfg.grid), 1) == prior


@given(configs_and_records(integer=True), st.lists(st.integers(0, 15), max_size=10))
def test_conjugacy_closure(cr, more):
    cfg, r1 = cr
    r2 = FailureRecord(cfg.grid, tuple(x % len(cfg.grid) for x in more))
    prior = beta_stacy_prior(cfg)
    two_step = beta_stacy_posterior(beta_stacy_posterior(prior, r1, cfg.s), r2, cfg.s)
    one_shot = beta_stacy_posterior(prior, r1.extend(r2), cfg.s)
    assert two_step == one_shot
    c = sufficient_counts(r1.extend(r2))
    s = cfg.s
    assert np.array_equal(one_shot.failure, (cfg.black + s * c.d) / s)
    assert np.array_equal(one_shot.survival, (cfg.white + s * c.f) / s)


@given(configs_and_records())
def test_posterior_mean_cdf_is_predictive_cdf(cr):
    cfg, rec = cr
    post = beta_stacy_posterior(beta_stacy_prior(cfg), rec, cfg.s)
    assert np.allclose(mean_cdf(post), predictive_distribution(cfg, rec).cdf, rtol=0, atol=1e-12)


def test_mean_cdf_examples():
    spec = beta_stacy_prior(symmetric(3))
    assert mean_cdf(spec).tolist() == [0.5, 0.75, 0.875]
    cfg = symmetric(3)
    post = beta_stacy_posterior(beta_stacy_prior(cfg), FailureRecord(cfg.grid, (1,)), 1)
    assert mean_cdf(post)[:2] == pytest.approx([1 / 3, 7 / 9], abs=1e-15)
    assert mean_cdf(BetaStacySpec(None, [], [])).shape == (0,)


def test_sample_cdf_degenerate():
    g = StateGrid.range(4)
    zero = BetaStacySpec(g, [0, 0, 0, 0], [1, 2, 3, 4])
    assert sample_cdf(zero, RngStream(1)).tolist() == [0, 0, 0, 0]
    certain = BetaStacySpec(g, [2, 1, 1, 1], [0, 1, 1, 1])
    assert np.all(sample_cdfs(certain, 50, RngStream(2))[:, 0] == 1)


def test_sample_cdf_mean_and_shape():
    cfg = RupConfig(StateGrid.range(5), ((3, 1), (1, 2), (0.5, 0.5), (4, 1), (1, 1)), 1)
    spec = beta_stacy_posterior(beta_stacy_prior(cfg), FailureRecord(cfg.grid, (0, 2, 2, 4)), 1)
    n = 100_000
    draws = sample_cdfs(spec, n, RngStream(31))
    assert np.all(np.diff(draws, axis=1) >= 0)
    assert np.all((draws >= 0) & (draws <= 1))
    se = draws.std(axis=0, ddof=1) / np.sqrt(n)
    assert np.all(np.abs(draws.mean(axis=0) - mean_cdf(spec)) < 3 * se)


def test_sample_cdf_deterministic():
    spec = beta_stacy_prior(symmetric(6))
    assert np.array_equal(sample_cdf(spec, RngStream(5)), sample_cdf(spec, RngStream(5)))


def test_spec_validation():
    with pytest.raises(ValueError):
        BetaStacySpec(StateGrid.range(2), [0, 1], [0, 1])
    with pytest.raises(ValueError):
        BetaStacySpec(StateGrid.range(2), [1], [1])
