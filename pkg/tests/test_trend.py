import math

import numpy as np
import pytest

from fracdyn import (
    DifferenceModelParams,
    DimensionSeries,
    LogisticParams,
    MultiStartConfig,
    StabilityClass,
    classify_stability,
    difference_step,
    eval_difference_model,
    fit_difference_model,
    fit_logistic,
    logistic_solution_from_initial,
    logistic_to_difference,
    logistic_value,
    simulate_difference,
)

GOLDEN_BOUND = 1.0 + math.sqrt(5.0)


# ---------------------------------------------------------------- series type


def test_series_validation():
    DimensionSeries([1.0, 2.0], [1.5, 1.6])
    with pytest.raises(ValueError):
        DimensionSeries([2.0, 1.0], [1.5, 1.6])
    with pytest.raises(ValueError):
        DimensionSeries([1.0, 1.0], [1.5, 1.6])
    with pytest.raises(ValueError):
        DimensionSeries([1.0, 2.0], [1.5, np.nan])
    with pytest.raises(ValueError):
        DimensionSeries([], [])


def test_series_from_pairs():
    s = DimensionSeries.from_pairs([(2000, 1.4), (2001, 1.5)])
    np.testing.assert_array_equal(s.t, [2000.0, 2001.0])
    assert len(s) == 2


# ---------------------------------------------------------------- difference model


def test_params_reject_zero_c5():
    with pytest.raises(ValueError):
        DifferenceModelParams(0.0, 0.0, 0.0, 0.0, 0.0)


def test_eval_linear_part_dominates_for_huge_c5():
    p = DifferenceModelParams(1.0, 0.0, 0.0, 0.0, 1e18)
    assert eval_difference_model(p, 5.0) == pytest.approx(5.0, abs=1e-9)
    assert difference_step(p, 5.0) == pytest.approx(1.0, abs=1e-9)


def test_step_is_definitional():
    p = DifferenceModelParams(0.01, -3.0, 660.0, 1.8, 1.8e8)
    for t in (0.0, 100.0, 1999.5, 2020.0):
        assert difference_step(p, t) == eval_difference_model(
            p, t + 1.0
        ) - eval_difference_model(p, t)


def test_step_matches_expanded_closed_form_published_constants():
    # for c3=659.6, c4=1.847 the one-step increment expands to
    # c1 + [(t-658.6)^2 sin(t-0.847) - (t-659.6)^2 sin(t-1.847)]/c5
    p = DifferenceModelParams(0.003481, 5.494, 659.6, 1.847, 1.8e8)
    for t in np.linspace(1995.0, 2025.0, 61):
        expanded = (
            0.003481
            + ((t - 658.6) ** 2 * np.sin(t - 0.847)
               - (t - 659.6) ** 2 * np.sin(t - 1.847)) / 1.8e8
        )
        step = difference_step(p, t)
        # the step subtracts two model values that nearly cancel, so bound
        # the error by the magnitude of those values, not of the difference
        scale = max(
            abs(eval_difference_model(p, t)),
            abs(eval_difference_model(p, t + 1.0)),
            1.0,
        )
        assert abs(step - expanded) <= 1e-13 * scale


def test_step_matches_expanded_closed_form_random():
    rng = np.random.default_rng(424242)
    for _ in range(1000):
        c1 = rng.uniform(-1, 1)
        c2 = rng.uniform(-10, 10)
        c3 = rng.uniform(-50, 50)
        c4 = rng.uniform(0, 2 * np.pi)
        c5 = rng.choice([-1, 1]) * 10 ** rng.uniform(0, 6)
        t = rng.uniform(-50, 50)
        p = DifferenceModelParams(c1, c2, c3, c4, c5)
        term_a = (t + 1 - c3) ** 2 * np.sin(t + 1 - c4)
        term_b = (t - c3) ** 2 * np.sin(t - c4)
        expanded = c1 + (term_a - term_b) / c5
        # scale bound covers cancellation between the two quadratic terms
        scale = 1.0 + abs(c1) + (abs(term_a) + abs(term_b)) / abs(c5)
        assert abs(difference_step(p, t) - expanded) <= 1e-12 * scale


def test_difference_fit_round_trip():
    true = DifferenceModelParams(0.003, -4.5, 660.0, 1.8, 1.8e8)
    ts = np.arange(2000.0, 2021.0)
    data = eval_difference_model(true, ts)
    result = fit_difference_model(DimensionSeries(ts, data))
    assert result.l1_error <= 1e-6
    dev = np.abs(eval_difference_model(result.params, ts) - data)
    assert dev.max() <= 1e-6


def test_difference_fit_flat_series():
    ts = np.arange(2000.0, 2021.0)
    result = fit_difference_model(DimensionSeries(ts, np.full(21, 1.5)))
    assert result.l1_error <= 1e-6
    p = result.params
    assert abs(p.c1) < 1e-6
    osc = (ts - p.c3) ** 2 * np.abs(np.sin(ts - p.c4)) / abs(p.c5)
    assert osc.max() < 1e-6


def test_difference_fit_needs_six_samples():
    with pytest.raises(ValueError, match="6 samples"):
        fit_difference_model(
            DimensionSeries([1.0, 2.0, 3.0], [1.0, 1.1, 1.2])
        )
    with pytest.raises(ValueError, match="6 samples"):
        fit_difference_model(
            DimensionSeries([1.0, 2.0, 3.0, 4.0, 5.0], [1.0, 1.1, 1.2, 1.3, 1.4])
        )


def test_difference_fit_deterministic():
    rng = np.random.default_rng(5)
    ts = np.arange(1990.0, 2011.0)
    data = 1.4 + 0.004 * (ts - 1990.0) + 0.01 * rng.standard_normal(ts.size)
    a = fit_difference_model(DimensionSeries(ts, data))
    b = fit_difference_model(DimensionSeries(ts, data))
    assert a.params == b.params
    assert a.l1_error == b.l1_error
    c = fit_difference_model(
        DimensionSeries(ts, data), MultiStartConfig(starts=4, seed=99)
    )
    assert np.isfinite(c.l1_error)


def test_multistart_config_validation():
    with pytest.raises(ValueError):
        MultiStartConfig(starts=0)
    with pytest.raises(ValueError):
        MultiStartConfig(seed=-1)


# ---------------------------------------------------------------- logistic model


def test_logistic_params_validation():
    with pytest.raises(ValueError):
        LogisticParams(K=-1.0, A=1.0, r=0.1, offset=0.0)
    with pytest.raises(ValueError):
        LogisticParams(K=1.0, A=0.0, r=0.1, offset=0.0)
    with pytest.raises(ValueError):
        LogisticParams(K=1.0, A=1.0, r=np.inf, offset=0.0)


def test_logistic_value_saturates_without_overflow():
    p = LogisticParams(K=0.7, A=2.07022e40, r=0.049432, offset=1.0)
    # far past: exponent overflows but the value cleanly saturates at offset
    assert logistic_value(p, -5000.0) == pytest.approx(1.0, abs=1e-12)
    assert logistic_value(p, 1e6) == pytest.approx(1.7, abs=1e-12)


def test_logistic_round_trip_reference_params():
    true = LogisticParams(K=0.699952, A=2.07022e40, r=0.049432, offset=1.0)
    years = np.array([1900, 1915, 1924, 1935, 1956, 1986, 2006, 2013], float)
    d = logistic_value(true, years)
    result = fit_logistic(DimensionSeries(years, d), offset=1.0)
    assert abs(result.params.K - true.K) / true.K < 0.01
    assert abs(result.params.r - true.r) / true.r < 0.02
    assert result.rmse < 1e-6


@pytest.mark.parametrize("seed", range(10))
def test_logistic_round_trip_random_params(seed):
    rng = np.random.default_rng(1000 + seed)
    K = rng.uniform(0.3, 1.0)
    r = rng.uniform(0.02, 0.2)
    offset = rng.uniform(0.0, 2.0)
    t0 = rng.uniform(1800.0, 1950.0)
    span = 3.5 / r  # comfortably covers the required 3/r window
    t = np.linspace(t0, t0 + span, 10)
    t_mid = t0 + span / 2
    A = math.exp(r * t_mid)  # growth midpoint inside the sample window
    d = logistic_value(LogisticParams(K=K, A=A, r=r, offset=offset), t)
    result = fit_logistic(DimensionSeries(t, d), offset=offset)
    assert abs(result.params.K - K) / K < 0.01
    assert abs(result.params.r - r) / r < 0.02


def test_logistic_fit_constant_series_flat_limit():
    t = np.linspace(1900.0, 2000.0, 8)
    d = np.full(8, 1.35)
    result = fit_logistic(DimensionSeries(t, d), offset=1.0)
    assert result.rmse <= 1e-6


def test_logistic_fit_preconditions():
    t = np.array([1.0, 2.0, 3.0, 4.0])
    with pytest.raises(ValueError, match="offset"):
        fit_logistic(DimensionSeries(t, [1.5, 1.6, 0.9, 1.7]), offset=1.0)
    with pytest.raises(ValueError, match="4 samples"):
        fit_logistic(DimensionSeries([1.0, 2.0, 3.0], [1.5, 1.6, 1.7]), offset=1.0)


def test_logistic_ode_identity():
    # dPhi/dt = r Phi (1 - Phi/K) for the offset-free closed form.
    # Draws place t inside the active growth window, where the relative
    # comparison is well conditioned; a scale-absolute check runs
    # unrestricted alongside.
    rng = np.random.default_rng(20240817)
    h = 1e-4
    for _ in range(1000):
        K = rng.uniform(0.3, 3.0)
        A = math.exp(rng.uniform(-5.0, 5.0))
        r = rng.uniform(0.01, 0.5)
        u = rng.uniform(-4.0, 4.0)
        t = (math.log(A) - u) / r
        p = LogisticParams(K=K, A=A, r=r, offset=0.0)
        phi = logistic_value(p, t)
        analytic = r * phi * (1.0 - phi / K)
        numeric = (logistic_value(p, t + h) - logistic_value(p, t - h)) / (2 * h)
        assert abs(numeric - analytic) / abs(analytic) < 1e-6

        t_any = rng.uniform(-200.0, 400.0)
        phi_any = logistic_value(p, t_any)
        analytic_any = r * phi_any * (1.0 - phi_any / K)
        numeric_any = (
            logistic_value(p, t_any + h) - logistic_value(p, t_any - h)
        ) / (2 * h)
        assert abs(numeric_any - analytic_any) <= 1e-9 * r * K


def test_solution_from_initial():
    assert logistic_solution_from_initial(2.0, 1.0, 1.0).A == 1.0
    p = logistic_solution_from_initial(1.0, 0.5, 0.25)
    assert p.A == 3.0 and p.offset == 0.0
    with pytest.raises(ValueError):
        logistic_solution_from_initial(1.0, 0.5, 1.0)
    with pytest.raises(ValueError):
        logistic_solution_from_initial(1.0, 0.5, 0.0)


def test_solution_from_initial_passes_through_d0():
    p = logistic_solution_from_initial(1.7, 0.08, 0.4)
    assert logistic_value(p, 0.0) == pytest.approx(0.4, rel=1e-12)


# ---------------------------------------------------------------- difference form


def test_to_difference_b_is_r_plus_one():
    for r in (0.049432, 0.0, 2.0, 0.31):
        p = LogisticParams(K=0.7, A=1.0, r=r, offset=1.0)
        form = logistic_to_difference(p)
        assert form.b == r + 1.0  # definitional float identity
        assert abs((form.b - 1.0) - r) < 1e-15
    assert logistic_to_difference(
        LogisticParams(K=0.699952, A=2.07022e40, r=0.049432, offset=1.0)
    ).b == 1.049432


def test_state_map_fixed_point_correspondence():
    # the map's fixed point 1 - 1/b corresponds to phi = K
    p = LogisticParams(K=0.7, A=3.0, r=0.25, offset=0.0)
    form = logistic_to_difference(p)
    assert form.state(p.K) == pytest.approx(1.0 - 1.0 / form.b, rel=1e-12)


# ---------------------------------------------------------------- stability


def test_classify_bands():
    assert classify_stability(1.5) is StabilityClass.LARGE_NEIGHBORHOOD_STABLE
    assert classify_stability(2.0) is StabilityClass.LARGE_NEIGHBORHOOD_STABLE
    assert classify_stability(2.5) is StabilityClass.NEAR_EQUILIBRIUM_STABLE
    assert classify_stability(3.1) is StabilityClass.PERIOD_TWO_OSCILLATION
    assert classify_stability(GOLDEN_BOUND) is StabilityClass.UNSTABLE
    assert classify_stability(4.0) is StabilityClass.UNSTABLE
    assert classify_stability(3.0) is StabilityClass.OUT_OF_RANGE
    assert classify_stability(1.0) is StabilityClass.OUT_OF_RANGE
    assert classify_stability(0.2) is StabilityClass.OUT_OF_RANGE
    assert classify_stability(-1.0) is StabilityClass.OUT_OF_RANGE


def test_classification_is_total():
    for b in np.linspace(-2.0, 6.0, 401):
        assert isinstance(classify_stability(float(b)), StabilityClass)


# ---------------------------------------------------------------- orbits


def test_orbit_converges_to_fixed_point():
    orbit = simulate_difference(1.5, 0.2, 500)
    assert orbit.shape == (501,)
    assert orbit[0] == 0.2
    assert abs(orbit[-1] - (1.0 - 1.0 / 1.5)) < 1e-6


def test_orbit_period_two():
    orbit = simulate_difference(3.2, 0.3, 2000)
    tail = orbit[-40:]
    evens, odds = tail[::2], tail[1::2]
    assert np.ptp(evens) < 1e-6 and np.ptp(odds) < 1e-6
    assert abs(evens.mean() - odds.mean()) > 0.1


def test_orbit_slow_growth_monotone():
    orbit = simulate_difference(1.049432, 0.01, 10000)
    steps = np.diff(orbit)
    assert (steps >= 0).all()
    assert (steps[:500] > 0).all()  # strictly rising until it parks on the
    assert abs(orbit[-1] - (1.0 - 1.0 / 1.049432)) < 1e-9  # fixed point


def test_orbit_validation():
    with pytest.raises(ValueError):
        simulate_difference(1.5, 0.0, 10)
    with pytest.raises(ValueError):
        simulate_difference(1.5, 1.0, 10)
    with pytest.raises(ValueError):
        simulate_difference(1.5, 0.5, 0)


def test_orbit_behavior_matches_classifier_bands():
    for b in (1.1, 1.5, 1.9, 2.2, 2.8, 3.05, 3.2, 3.5):
        cls = classify_stability(b)
        orbit = simulate_difference(b, 0.2, 4000)
        tail = orbit[-200:]
        fixed = 1.0 - 1.0 / b
        if cls in (
            StabilityClass.LARGE_NEIGHBORHOOD_STABLE,
            StabilityClass.NEAR_EQUILIBRIUM_STABLE,
        ):
            assert np.abs(tail - fixed).max() < 1e-6
        elif cls is StabilityClass.PERIOD_TWO_OSCILLATION:
            evens, odds = tail[::2], tail[1::2]
            assert np.ptp(evens) < 1e-5 and np.ptp(odds) < 1e-5
            assert abs(evens.mean() - odds.mean()) > 1e-3
        else:
            assert cls is StabilityClass.UNSTABLE
            # neither settles at the fixed point nor on a 2-cycle
            evens, odds = tail[::2], tail[1::2]
            assert np.abs(tail - fixed).max() > 1e-3
            assert np.ptp(evens) > 1e-3 or np.ptp(odds) > 1e-3
