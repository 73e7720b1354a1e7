import json
import math

import pytest

import ramploads as rl


def test_sine_squared_law():
    chart = rl.build_chart(rl.RampProfile.straight(math.pi / 4, 1.0))
    field = rl.solve(chart, "frictionless")
    table = rl.surface_state(chart, field, rl.uniform_x_stations(chart, 1.0, 16))
    for st in table["stations"]:
        assert st["N"] == pytest.approx(0.5, abs=1e-12)
    assert table["stations"][-1]["drag_cum"] == pytest.approx(0.5, rel=1e-10)


def test_parabola_arc_length_and_speed():
    chart = rl.build_chart(rl.RampProfile.power(0.5, 2.0, 1.0))
    assert chart.s_max == pytest.approx((math.sqrt(2) + math.asinh(1)) / 2, rel=1e-10)
    field = rl.solve(chart, "frictionless")
    assert field.w(chart.s_max) == pytest.approx(2 * (math.sqrt(2) - 1), rel=1e-9)


def test_alpha1_horizon():
    chart = rl.build_chart(rl.RampProfile.parse("straight:45deg", 2.0))
    field = rl.solve(chart, "vpower:k=1,alpha=1")
    assert abs(field.s_valid - math.sqrt(2)) < 1e-6


def test_ode_matches_closed_form():
    chart = rl.build_chart(rl.RampProfile.straight(math.pi / 4, 2.0))
    closed = rl.solve(chart, "vpower:k=1,alpha=2")
    ode = rl.solve(chart, "vpower:k=1,alpha=2", force_ode=True)
    assert ode.uses_ode and not closed.uses_ode
    for s in (0.1, 1.0, 2.5):
        assert ode.w(s) == pytest.approx(closed.w(s), rel=1e-6)


def test_conservation_and_weak_form():
    chart = rl.build_chart(rl.RampProfile.polynomial([0.0, 1.0, 0.5], 1.0))
    field = rl.solve(chart, "coulomb:eta=0.2")
    stations = rl.uniform_x_stations(chart, 1.0, 64)
    for r in rl.conservation_report(chart, field, stations):
        assert abs(r["x_momentum"]) < 1e-7
        assert abs(r["y_momentum"]) < 1e-7
    for per in rl.weak_residuals(chart, field).values():
        assert max(per.values()) < 1e-6


def test_oracle_order():
    chart = rl.build_chart(rl.RampProfile.polynomial([0.0, 1.0, 0.5], 1.0))
    study = rl.convergence_study(chart, "frictionless", [0.04, 0.02, 0.01])
    assert study["order_w"] == pytest.approx(1.0, abs=0.3)
    states = rl.run_accretion(chart, "frictionless", 0.05, chart.s_max)
    assert states[-1]["M"] == pytest.approx(chart.b_of_s(states[-1]["s"]), rel=1e-15)


def test_frozen_and_config():
    chart = rl.build_chart(rl.RampProfile.straight(math.pi / 4, 1.0))
    loads = rl.frozen_limit_loads(chart, 0.5)
    assert loads["N"] == pytest.approx(0.5)
    assert loads["f"] == pytest.approx(0.5)
    out = rl.solve_config(json.dumps({"profile": "straight:30deg", "model": "coulomb:eta=0.1", "stations": 8}))
    assert len(out["stations"]) == 8
    assert out["drag"] > 0


def test_errors_carry_codes():
    with pytest.raises(rl.Error) as err:
        rl.build_chart(rl.RampProfile.tabulated([0, 1, 2], [0, 0.5, 0.4]))
    assert err.value.code == "NonMonotoneProfile"
    chart = rl.build_chart(rl.RampProfile.straight(math.pi / 4, 1.0))
    with pytest.raises(rl.Error):
        rl.solve(chart, "vpower:k=1,alpha=0.5")
    assert rl.validate_profile(rl.RampProfile.power(0.5, 2.0, 1.0))[0][0] == "warning"


def test_cli_entry_point(tmp_path):
    out = tmp_path / "t.csv"
    assert rl.main(["solve", "--stations", "4", "-o", str(out)]) == 0
    assert out.read_text().splitlines()[0] == "x,s,w,u,v,w_rho,wf1,wf2,N,f,drag_cum,lift_cum"
