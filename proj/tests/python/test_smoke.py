import json
import math

import numpy as np
import pytest

import argminci


def ramp_matrix(n=40, p=4, seed=3):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(n, p)) + np.arange(p) * 2.0
    return x


def test_folds_and_out_of_fold_mean():
    assert argminci.fold_partition(6, 3) == [0, 0, 1, 1, 2, 2]
    x = np.array([[1.0, 9.0], [2.0, 9.0], [3.0, 9.0], [4.0, 9.0]])
    assert argminci.out_of_fold_mean(x, 2, 0)[0] == pytest.approx(3.5)
    assert argminci.out_of_fold_mean(x, 2, 1)[0] == pytest.approx(1.5)


def test_exponential_weights_known_values():
    w = argminci.exponential_weights([0.0, math.log(2.0), 5.0], 2, 1.0)
    assert w[0] == pytest.approx(2.0 / 3.0, abs=1e-14)
    assert w[1] == pytest.approx(1.0 / 3.0, abs=1e-14)
    assert w[2] == 0.0


def test_statistic_matches_hand_computation():
    x = np.array([[2.0, 0.0], [1.0, 0.0], [3.0, 0.0], [2.0, 0.0]])
    # Single competitor: differences equal column 0, T = sum / (sqrt(n) sd).
    t = argminci.test_statistic(x, 0, 2, 1.0)
    assert t == pytest.approx(4.0 * math.sqrt(2.0), rel=1e-12)
    d = np.array([2.0, 1.0, 3.0, 2.0])
    assert argminci.variance_out(d) == pytest.approx(0.5)
    assert argminci.variance_in(d, 2) == pytest.approx(0.5)


def test_confidence_set_report_and_indices():
    x = ramp_matrix()
    report = json.loads(argminci.confidence_set(x, alpha=0.05, folds=2,
                                                lambda_="auto", seed=9))
    assert report["n"] == 40 and report["p"] == 4
    assert report["confidence_set"] == [1]
    assert argminci.confidence_set_indices(x, alpha=0.05, folds=2,
                                           lambda_="auto", seed=9) == [1]


def test_errors_surface_as_python_exceptions():
    with pytest.raises(argminci.ArgminError):
        argminci.fold_partition(7, 2)
    with pytest.raises(argminci.ArgminError):
        argminci.exponential_weights([0.0, 1.0], 5, 1.0)


def test_tuning_is_reproducible_and_bracketed():
    x = ramp_matrix(n=20, p=3, seed=11)
    a = argminci.select_lambda(x, 0, folds=2, seed=21)
    b = argminci.select_lambda(x, 0, folds=2, seed=21)
    assert a == b
    assert a["selected"] >= a["lambda0"] > 0.0


def test_baselines_agree_on_a_clear_argmin():
    x = ramp_matrix(n=60, p=3, seed=5)
    x[:, 0] -= 10.0
    assert argminci.bonferroni_set(x, 0.05) == [1]
    assert argminci.gupta_set(x, 0.05) == [1]
    assert argminci.futschik_set(x, 0.05) == [1]


def test_simulation_helpers():
    mu = argminci.make_landscape("three-tier", 12, 1.0)
    assert mu[:5] == pytest.approx([1.0] * 5)
    assert mu[5:10] == pytest.approx([1.02] * 5)
    assert mu[10:] == pytest.approx([10.0] * 2)
    cov = argminci.toeplitz_covariance(3, 0.5)
    assert cov[0][2] == pytest.approx(0.25)
    a = argminci.sample_gaussian(mu, 0.0, 8, seed=4)
    b = argminci.sample_gaussian(mu, 0.0, 8, seed=4)
    assert np.array_equal(np.asarray(a), np.asarray(b))


def test_stats_entry_points():
    assert argminci.normal_quantile(0.95) == pytest.approx(1.6448536269514722)
    assert argminci.kolmogorov_sf(1.0) == pytest.approx(0.2699996716773798)
    stat, p = argminci.ks_test_standard_normal(
        list(np.random.default_rng(1).normal(size=500)))
    assert 0.0 <= stat <= 1.0 and p > 0.01
