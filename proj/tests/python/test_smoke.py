"""Smoke tests for the python bindings: one pass over each module area."""

import math

import pytest

import cablewave as cw


def test_version_present():
    assert cw.__version__ == "0.1.0"


def test_closed_form_wave_matches_reference_values():
    wave = cw.solve_single_wave(cw.Substrate(1.0, 5.0), amplitude=0.01)
    assert wave.alpha == pytest.approx(0.6909830056250526, abs=1e-15)
    assert wave.phase_speed_squared == pytest.approx(1.0483765604637539, abs=1e-15)
    # Deepest compression at the midpoint of the compression window.
    trough = cw.profile(wave, wave.alpha / 2.0)
    assert trough == pytest.approx(-0.01 * math.sqrt(5.0), rel=1e-12)

    pf = cw.wave_period_frequency(wave)
    assert pf.period * pf.angular_frequency == pytest.approx(2.0 * math.pi, rel=1e-14)

    with pytest.raises(ValueError):
        cw.solve_single_wave(cw.Substrate(0.0, 5.0))


def test_limit_cases_report_no_regular_wave():
    report = cw.limit_case(cw.Substrate(1.0, 5.0), cw.LimitKind.unilateral)
    assert report.alpha_limit == 0.0
    assert not report.regular_wave_exists
    rigid = cw.limit_case(cw.Substrate(1.0, 5.0), cw.LimitKind.unilaterally_rigid)
    assert rigid.c_squared_limit == pytest.approx(1.0 + 1.0 / math.pi**2, rel=1e-14)


def test_loaded_wave_round_trip():
    substrate = cw.Substrate(1.0, 2.0)
    alpha = 1.2 * cw.alpha_critical(substrate)
    wave = cw.solve_loaded_wave(substrate, -0.01, alpha)
    assert wave.wavenumber == pytest.approx(5.8193953043895213, rel=1e-12)
    bounds = cw.extrema(wave)
    assert bounds.w_min == pytest.approx(-0.031884482238741098, rel=1e-12)
    assert cw.loaded_profile(wave, 0.0) == pytest.approx(0.0, abs=1e-14)

    with pytest.raises(ValueError):
        cw.solve_loaded_wave(substrate, +0.01, alpha)  # inadmissible sign


def test_simulator_runs_and_balances_energy():
    wave = cw.solve_single_wave(cw.Substrate(1.0, 5.0), amplitude=0.01)
    config = cw.SimConfig()
    config.substrate = wave.substrate
    config.t_end = 5.0
    config.boundary.kind = cw.BoundaryDriver.Kind.wave_trace
    config.boundary.wave = wave
    config.boundary.ramp_time = 1.0
    config.snapshot_times = [5.0]
    record = cw.run(config)
    assert record.cumulative_balance_error < 1e-4
    assert len(record.snapshots) == 1
    assert len(record.snapshots[0].displacement) == len(record.grid)
    assert record.probes[0].times[0] == 0.0


def test_floquet_multipliers_are_unity():
    wave = cw.solve_single_wave(cw.Substrate(1.0, 5.0), amplitude=0.01)
    result = cw.floquet_map(wave)
    assert abs(result.monodromy.det() - 1.0) < 1e-12
    for multiplier in result.multipliers:
        assert abs(multiplier - 1.0) < 1e-10


def test_spec_layer_parses_and_executes():
    spec = cw.parse_spec(["analytic", "--k1=1", "--k2=5", "--samples=11"])
    assert spec.command == cw.Command.analytic
    assert spec.params["samples"] == "11"
    artifacts = cw.execute_spec(spec)
    assert [t.name for t in artifacts.tables] == ["profile"]
    assert len(artifacts.tables[0].rows) == 11
    facts = dict(artifacts.facts)
    assert float(facts["alpha"]) == pytest.approx(0.6909830056250526, rel=1e-15)

    with pytest.raises(ValueError):
        cw.parse_spec(["analytic", "--k1=1"])  # missing required k2


def test_verification_scenario_runs():
    result = cw.run_scenario("alpha-critical")
    assert result.passed
    assert "[PASS]" in cw.format_result(result)
