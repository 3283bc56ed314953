import math

import pytest

import leocov


def test_defaults_and_geometry():
    p = leocov.default_params()
    assert p["phi_s_deg"] == pytest.approx(25.0)
    assert p["N_S"] == 3000
    assert leocov.r_max_km() == pytest.approx(410.345932, rel=1e-8)
    assert leocov.p_zero() == pytest.approx(0.86436132, rel=1e-7)
    assert "p_s_w" in leocov.assumed_defaults()


def test_coverage_curves():
    values = [leocov.coverage_ts(t).value for t in (-20, 0, 15)]
    assert values == sorted(values, reverse=True)
    assert 0.0 < values[-1] < values[0] < 1.0
    ses = leocov.coverage_ses(15.0)
    assert ses.value == pytest.approx(0.8682, abs=1e-3)
    e2e = leocov.coverage_e2e(0.0)
    assert float(e2e) == pytest.approx(leocov.coverage_ts(0.0).value * leocov.coverage_ses(0.0).value)
    assert leocov.coverage_ts(0.0, {"N_S": 5000}).value > leocov.coverage_ts(0.0).value


def test_rates_and_simulation_agree():
    analytic = leocov.aer_ses().value
    est = leocov.simulate_aer_ses(trials=5000, seed=3)
    assert abs(est.mean - analytic) < 5 * est.std_error + 0.01 * analytic
    cps = leocov.simulate_coverage_ses([-10.0, 10.0], trials=5000)
    assert cps[0].mean > cps[1].mean
    assert cps[0].trials_used == 5000


def test_simulation_is_deterministic():
    a = leocov.simulate_coverage_ts([0.0], trials=500, seed=9, threads=1)[0]
    b = leocov.simulate_coverage_ts([0.0], trials=500, seed=9, threads=3)[0]
    assert a.mean == b.mean


def test_commands_and_errors():
    csv = leocov.analyze(["sweep.axis=T_db", "sweep.values=[0, 5]"])
    rows = [line for line in csv.splitlines() if not line.startswith("#")]
    assert rows[0].startswith("sweep_value,analytic_value")
    assert len(rows) == 3
    ok, text, _ = leocov.validate(["mc.trials=500"], cp_tol=1.0, aer_tol=1.0)
    assert ok and "PASS" in text
    with pytest.raises(ValueError, match="bogus"):
        leocov.coverage_ts(0.0, {"bogus": 1.0})
    with pytest.raises(ValueError):
        leocov.coverage_ts(0.0, {"phi_s_deg": -5.0})
    assert math.isclose(leocov.kummer_1f1(1.0, 1.0, 2.0), math.exp(2.0), rel_tol=1e-14)
