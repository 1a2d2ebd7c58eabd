import math

import numpy as np
import pytest

from rssentropy import distributions as D
from rssentropy.errors import ConfigError, InvalidWindow, TooManyDegenerate
from rssentropy.montecarlo import (
    EXP_ALTERNATIVES,
    NORM_ALTERNATIVES,
    EntropyQuantity,
    MonteCarloConfig,
    MonteCarloReport,
    PowerProfile,
    average_power,
    calibrate_critical_values,
    critical_value,
    estimate_bias_rmse,
    estimate_power,
    format_m_set,
    max_power_per_alternative,
    optimal_window,
    simulate,
    summarize_min,
)

SMALL = MonteCarloConfig(reps=2000, master_seed=7, k=10, r=1, block_size=500)


def test_quantile_convention():
    values = np.arange(1, 101)
    assert critical_value(values, 0.05) == 95
    assert critical_value(values[::-1], 0.05) == 95
    assert critical_value(values, 0.01) == 99
    assert critical_value(values, 0.1) == 90
    assert critical_value(np.arange(1, 11), 0.25) == 8  # ceil(7.5)


def test_config_validation():
    with pytest.raises(ConfigError):
        MonteCarloConfig(reps=50)
    with pytest.raises(ConfigError):
        MonteCarloConfig(alpha_levels=(1.5,))
    with pytest.raises(InvalidWindow):
        MonteCarloConfig(r=1, m_range=(1, 6)).windows(5)
    assert MonteCarloConfig(r=3).windows(15) == list(range(1, 16))


def test_oracle_estimator_has_no_error():
    def truth(data, m):
        return np.full(data.shape[0], D.normal().entropy())

    report = estimate_bias_rmse(D.normal(), "rss", truth, SMALL)
    assert all(v == 0 for v in report.column("bias"))
    assert all(v == 0 for v in report.column("rmse"))


def test_bias_rmse_shape_and_sorting():
    report = estimate_bias_rmse(D.uniform(), "rss", "h1", SMALL)
    assert report.column("m") == [1, 2, 3, 4, 5]
    assert report.kind == "bias_rmse"
    for row in report.rows:
        assert row["rmse"] >= abs(row["bias"])
        assert row["bias_se"] > 0 and row["rmse_se"] > 0
    with pytest.raises(ConfigError):
        estimate_bias_rmse(D.uniform(), "srs", "h1", SMALL)


def test_h2_window_bound():
    cfg = MonteCarloConfig(reps=200, r=2)
    report = estimate_bias_rmse(D.uniform(), "rss", "h2", cfg)
    assert report.column("m") == [1, 2, 3, 4, 5]


def _report(rows):
    return MonteCarloReport(
        "bias_rmse", ["m"], ["bias", "bias_se", "rmse", "rmse_se"], rows, SMALL
    )


def test_summarize_min_single_row():
    s = summarize_min(_report([dict(m=3, bias=-0.1, bias_se=0.01, rmse=0.2, rmse_se=0.01)]))
    assert (s.mrmse, s.m_at_mrmse, s.mab, s.m_at_mab) == (0.2, (3,), 0.1, (3,))


def test_summarize_min_reports_ties():
    rows = [
        dict(m=1, bias=0.3, bias_se=0.001, rmse=0.30, rmse_se=0.001),
        dict(m=2, bias=0.05, bias_se=0.001, rmse=0.101, rmse_se=0.002),
        dict(m=3, bias=-0.01, bias_se=0.001, rmse=0.100, rmse_se=0.002),
        dict(m=4, bias=0.02, bias_se=0.001, rmse=0.110, rmse_se=0.002),
    ]
    s = summarize_min(_report(rows))
    assert s.m_at_mrmse == (3, 2)
    assert s.m_at_mab == (3,)
    assert s.mab == pytest.approx(0.01)


def test_worker_count_does_not_change_results():
    cfg1 = MonteCarloConfig(reps=1200, master_seed=3, r=2, block_size=250, workers=1)
    cfg3 = MonteCarloConfig(reps=1200, master_seed=3, r=2, block_size=250, workers=3)
    a = calibrate_critical_values("norm", "kl2", cfg1)
    b = calibrate_critical_values("norm", "kl2", cfg3)
    assert a.to_csv() == b.to_csv()
    assert a.rows == b.rows
    q = EntropyQuantity("h1", (1, 2))
    va, _ = simulate(q, D.exponential(), cfg1, "x")
    vb, _ = simulate(q, D.exponential(), cfg3, "x")
    np.testing.assert_array_equal(va, vb)


def test_seed_changes_results():
    a = calibrate_critical_values("exp", "kl1", SMALL)
    b = calibrate_critical_values("exp", "kl1", MonteCarloConfig(reps=2000, master_seed=8, block_size=500))
    assert a.column("critical") != b.column("critical")


def test_critical_values_monotone_in_alpha():
    report = calibrate_critical_values("exp", "kl1", SMALL)
    for m in range(1, 6):
        rows = sorted(report.where(m=m), key=lambda row: row["alpha"], reverse=True)
        crit = [row["critical"] for row in rows]
        assert crit == sorted(crit)
        assert all(row["critical_se"] >= 0 for row in rows)


def test_kl2_unavailable_for_single_cycle():
    with pytest.raises(InvalidWindow):
        calibrate_critical_values("norm", "kl2", SMALL)


def test_power_equals_size_under_null():
    cfg = MonteCarloConfig(reps=4000, master_seed=11, m_range=(2, 3), block_size=1000)
    crit = calibrate_critical_values("norm", "kl1", cfg)
    other = MonteCarloConfig(reps=4000, master_seed=12, m_range=(2, 3), block_size=1000)
    report = estimate_power("norm", "kl1", D.normal(5, 2), crit, other, alpha=0.05)
    for row in report.rows:
        assert abs(row["power"] - 0.05) < 0.02
        assert row["power_se"] <= math.sqrt(0.25 / 4000)


def test_power_accepts_plain_critical_values():
    cfg = MonteCarloConfig(reps=500, master_seed=1, m_range=(3, 3))
    assert estimate_power("exp", "kl1", D.uniform(), 10.0, cfg).rows[0]["power"] == 0.0
    assert estimate_power("exp", "kl1", D.uniform(), -10.0, cfg).rows[0]["power"] == 1.0
    with pytest.raises(ConfigError):
        estimate_power("exp", "kl1", D.uniform(), 0.1, MonteCarloConfig(reps=500))


def test_average_power_single_alternative():
    cfg = MonteCarloConfig(reps=1000, master_seed=5, m_range=(2, 4))
    crit = calibrate_critical_values("exp", "kl1", cfg)
    single = estimate_power("exp", "kl1", D.gamma(3), crit, cfg)
    avg = average_power("exp", "kl1", [D.gamma(3)], cfg, crit=crit)
    assert avg.column("average_power") == single.column("power")


def _flat_report(values, se=0.01):
    rows = [dict(m=m, average_power=v, average_power_se=se) for m, v in enumerate(values, start=1)]
    return MonteCarloReport("average_power", ["m"], ["average_power", "average_power_se"], rows, SMALL)


def test_optimal_window_flat_profile():
    best = optimal_window("exp", "kl1", [], SMALL, report=_flat_report([0.5] * 5))
    assert best.m_star == 1
    assert best.ties == (1, 2, 3, 4, 5)


def test_optimal_window_argmax():
    best = optimal_window("exp", "kl1", [], SMALL, report=_flat_report([0.1, 0.5, 0.7, 0.695, 0.3]))
    assert best.m_star == 3
    assert best.ap_star == 0.7
    assert best.ties == (3, 4)


def test_max_power_single_window():
    cfg = MonteCarloConfig(reps=500, master_seed=2, m_range=(2, 2))
    report = max_power_per_alternative("exp", "kl1", [D.uniform(), D.gamma(3)], cfg)
    assert [row["m_set"] for row in report.rows] == ["2", "2"]
    assert report.column("alternative") == ["uniform", "gamma(3)"]


def test_max_power_tie_sets():
    prof = PowerProfile(
        "exp", "kl1", ["a"], [1, 2, 3, 4], np.zeros(4),
        np.array([[0.9, 1.0, 1.0, 0.99999]]), np.zeros((1, 4)), 0.05, SMALL,
    )
    report = max_power_per_alternative("exp", "kl1", [], SMALL, profile=prof)
    assert report.rows[0]["m_set"] == "2-4"
    assert report.rows[0]["max_power"] == 1.0


def test_format_m_set():
    assert format_m_set([2, 3, 4, 5]) == "2-5"
    assert format_m_set([8, 10]) == "8,10"
    assert format_m_set([5]) == "5"
    assert format_m_set([1, 2, 5, 7, 8]) == "1-2,5,7-8"


def test_default_alternative_sets():
    assert [a.name for a in EXP_ALTERNATIVES] == [
        "gamma(1.5)", "lognormal(1)", "weibull(1.5)", "gamma(2)", "gamma(3)",
        "uniform", "weibull(2)", "lognormal(0.5)",
    ]
    assert [a.name for a in NORM_ALTERNATIVES] == [
        "t(5)", "t(3)", "uniform", "chisquare(4)", "chisquare(2)", "chisquare(1)",
    ]


def test_degenerate_replications_are_redrawn():
    calls = {"n": 0}

    def flaky(data, m):
        calls["n"] += 1
        out = np.ones(data.shape[0])
        if calls["n"] == 1:
            out[:1] = np.nan  # one degenerate replication in the first block
        return out

    report = estimate_bias_rmse(D.uniform(), "rss", flaky, MonteCarloConfig(reps=2000, m_range=(1, 1)))
    assert report.degenerate == 1
    assert report.rows[0]["bias"] == 1.0


def test_too_many_degenerate_fails_validation():
    calls = {"n": 0}

    def flaky(data, m):
        calls["n"] += 1
        out = np.ones(data.shape[0])
        if calls["n"] == 1:
            out[:5] = np.nan
        return out

    with pytest.raises(TooManyDegenerate):
        estimate_bias_rmse(D.uniform(), "rss", flaky, MonteCarloConfig(reps=1000, m_range=(1, 1)))


def test_csv_has_hash_and_seed():
    report = calibrate_critical_values("exp", "kl1", SMALL)
    text = report.to_csv()
    first, header = text.splitlines()[:2]
    assert f"config_hash={report.config_hash}" in first and "seed=7" in first
    assert header == "test,variant,n,k,r,m,alpha,critical,critical_se"
    assert text == calibrate_critical_values("exp", "kl1", SMALL).to_csv()
