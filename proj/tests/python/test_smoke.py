"""Smoke tests for the compiled module: shapes, known values, numpy agreement."""

import numpy as np
import pytest

import pcaretain as pr


def test_eigen_matches_numpy():
    rng = np.random.default_rng(7)
    a = rng.standard_normal((8, 8))
    a = (a + a.T) / 2
    spectrum = pr.eigen_decompose(a)
    np.testing.assert_allclose(spectrum.values, np.linalg.eigvalsh(a)[::-1], atol=1e-10)
    v = spectrum.vectors
    np.testing.assert_allclose(v.T @ v, np.eye(8), atol=1e-10)
    np.testing.assert_allclose(v @ np.diag(spectrum.values) @ v.T, a, atol=1e-8)


def test_psd_sqrt_multiplies_back():
    a = np.diag([9.0, 4.0, 1.0])
    b = pr.psd_sqrt(a)
    np.testing.assert_allclose(b @ b, a, atol=1e-10)


def test_covariances_match_numpy():
    rng = np.random.default_rng(21)
    x = rng.standard_normal((12, 5))
    np.testing.assert_allclose(pr.mle_covariance(x), np.cov(x.T, bias=True), atol=1e-12)
    np.testing.assert_allclose(pr.unbiased_covariance(x), np.cov(x.T), atol=1e-12)
    np.testing.assert_allclose(pr.pdc_covariance(x), np.cov(x.T), atol=1e-10)


def test_ledoit_wolf_shrinks():
    rng = np.random.default_rng(5)
    x = rng.standard_normal((6, 10))
    sigma, shrinkage, degenerate = pr.ledoit_wolf(x)
    assert 0.0 < shrinkage < 1.0
    assert not degenerate
    assert np.all(np.linalg.eigvalsh(sigma) > 0)


def test_spdc_full_rank_when_n_below_p():
    pop = pr.default_population()
    x = pr.sample_mvn(pop, 5, 99)
    sigma = pr.spdc_covariance(x, 0.1)
    assert np.all(np.linalg.eigvalsh(sigma) > 0)


def test_population_decision():
    pop = pr.default_population()
    result = pr.pca_from_covariance(pop.sigma)
    decision = pr.decide_all(result)
    assert (decision.kgc, decision.scree, decision.cumvar) == (8, 1, 4)
    np.testing.assert_allclose(
        result.cumulative_ratio[:4], [0.3906, 0.6075, 0.7581, 0.8358], atol=5e-4
    )


def test_retention_criteria_on_simple_spectrum():
    result = pr.pca_from_covariance(np.diag([4.0, 3.0, 2.0, 1.0]))
    assert pr.kaiser_guttman(result) == 3
    assert pr.scree_largest_drop(result) == 1
    assert pr.cumulative_variance_rule(result, 0.80) == 3
    pareto = pr.pareto_data(result, 0.80)
    assert pareto.cutoff_index == 3
    np.testing.assert_allclose(pareto.cumulative_percent, [40, 70, 90, 100], atol=1e-10)


def test_anova_reference_values():
    kgc = np.array([8, 8, 8, 8, 8, 7, 6, 4, 3, 2, 1], dtype=float)
    scree = np.ones(11)
    cv = np.array([4, 4, 4, 4, 3, 3, 3, 2, 2, 2, 1], dtype=float)
    table = pr.anova_oneway([kgc, scree, cv])
    assert table.f_stat == pytest.approx(21.93, abs=0.01)
    assert table.p_value == pytest.approx(1.34901e-6, rel=0.02)

    comparisons = pr.tukey_hsd(["kgc", "scree", "cv"], [kgc, scree, cv], 0.05)
    diffs = [c.mean_diff for c in comparisons]
    np.testing.assert_allclose(diffs, [4.7273, 2.8182, -1.9091], atol=1e-3)
    assert all(c.significant for c in comparisons)


def test_studentized_range_against_scipy():
    scipy_stats = pytest.importorskip("scipy.stats")
    for q, k, df in [(3.0, 3, 30), (4.2, 4, 12), (2.2, 2, 8)]:
        ref = scipy_stats.studentized_range.sf(q, k, df)
        assert pr.studentized_range_sf(q, k, df) == pytest.approx(ref, abs=1e-6)


def test_tukey_kramer_unequal_sizes_against_scipy():
    scipy_stats = pytest.importorskip("scipy.stats")
    if not hasattr(scipy_stats, "tukey_hsd"):
        pytest.skip("scipy.stats.tukey_hsd not available")
    rng = np.random.default_rng(88)
    groups = [rng.standard_normal(6) + 0.5, rng.standard_normal(9),
              rng.standard_normal(4) - 0.4]
    ours = pr.tukey_hsd(["a", "b", "c"], groups, 0.05)
    ref = scipy_stats.tukey_hsd(*groups)
    ci = ref.confidence_interval()
    for cmp, (i, j) in zip(ours, [(0, 1), (0, 2), (1, 2)]):
        assert cmp.p_value == pytest.approx(ref.pvalue[i, j], abs=1e-5)
        assert cmp.ci_lower == pytest.approx(ci.low[i, j], abs=1e-6)
        assert cmp.ci_upper == pytest.approx(ci.high[i, j], abs=1e-6)


def test_sampling_determinism():
    pop = pr.default_population()
    a = pr.sample_mvn(pop, 6, 1234)
    b = pr.sample_mvn(pop, 6, 1234)
    assert a.shape == (6, 10)
    np.testing.assert_array_equal(a, b)


def test_run_grid_smoke():
    pop = pr.default_population()
    out = pr.run_grid(pop, sample_sizes=[2, 100], replications=30)
    assert out["population"] == (8, 1, 4)
    cells = {c["n"]: c for c in out["cells"]}
    assert cells[2]["kgc_mode"] == 1
    assert cells[100]["kgc_mode"] == 8
    assert cells[100]["failed"] == 0
