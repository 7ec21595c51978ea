import math

import numpy as np
import pytest

import coxpp


def test_disk_constant():
    value, err = coxpp.chord_square_integral(coxpp.Window.disk(0, 0, 1))
    assert abs(value - 16 / 3) <= 1e-8
    assert err < 1e-8


def test_bounds():
    disk = coxpp.Window.parse("disk:0,0,1")
    assert coxpp.cox_bound(1.0, 10.0, disk) == pytest.approx(16 / 30)
    assert coxpp.satellite_bound(2.0, 40) == pytest.approx(0.2)


def test_samples_have_the_right_shape():
    sq = coxpp.Window.rect(0, 0, 1, 1)
    pts = coxpp.sample_ppp(sq, 50.0, seed=3)
    assert pts.ndim == 2 and pts.shape[1] == 2
    assert np.all((pts >= 0) & (pts <= 1))
    sat = coxpp.sample_satellites(2.0, 40, seed=3)
    assert sat.shape[1] == 3
    np.testing.assert_allclose(np.linalg.norm(sat, axis=1), 1.0, atol=1e-12)
    cox = coxpp.sample_cox_line(1.0, 20.0, coxpp.Window.disk(0, 0, 1), seed=4)
    assert np.all(np.hypot(cox[:, 0], cox[:, 1]) <= 1.0 + 1e-12)


def test_same_seed_same_sample():
    w = coxpp.Window.disk(0, 0, 1)
    a = coxpp.sample_cox_line(1.0, 20.0, w, seed=9, stream=2)
    b = coxpp.sample_cox_line(1.0, 20.0, w, seed=9, stream=2)
    np.testing.assert_array_equal(a, b)


def test_cox_line_intensity_is_half_c():
    mean, se = coxpp.effective_intensity("cox-line", 1.0, 100.0, coxpp.Window.disk(0, 0, 1), reps=4000)
    assert abs(mean - 0.5) < 3 * se


def test_coarea_ratios():
    assert coxpp.coarea_ratio(coxpp.Window.rect(0, 0, 1, 1)) == pytest.approx(1.0, abs=1e-6)
    assert coxpp.coarea_ratio(coxpp.Window.disk(0, 0, 1)) == pytest.approx(0.5, abs=1e-6)


def test_rate_regression():
    fit = coxpp.rate_regression([1, 2, 4, 8], [1, 0.5, 0.25, 0.125])
    assert fit["slope"] == pytest.approx(-1.0)


def test_small_experiment():
    out = coxpp.run_experiment("satellites", sweep=[10, 20, 40, 80], reps=1000)
    assert len(out["rows"]) == 4
    assert all(r["within_bound"] for r in out["rows"])
    assert math.isfinite(out["slope"])


def test_checks_and_errors():
    rows = coxpp.run_checks("coarea", seed=1)
    assert rows and all(r["pass"] for r in rows)
    with pytest.raises(ValueError):
        coxpp.run_checks("nonsense")
    with pytest.raises(ValueError):
        coxpp.run_experiment("satellites", sweep=[10, 5, 20, 40], reps=1000)
