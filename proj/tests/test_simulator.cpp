#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cablewave/errors.hpp"
#include "cablewave/loaded_wave.hpp"
#include "cablewave/simulator.hpp"
#include "cablewave/traveling_wave.hpp"
#include "doctest.h"

using namespace cablewave;

namespace {

constexpr double pi = std::numbers::pi;

SimConfig base_config(const Substrate& substrate) {
  SimConfig config;
  config.substrate = substrate;
  config.base_speed = 1.0;
  config.wavelength = 1.0;
  return config;
}

/// Max |field - analytic wave| over grid nodes with x inside [lo, hi].
double window_error(const RunRecord& record, const Snapshot& snap,
                    const TravelingWave& wave, double lo, double hi) {
  double worst = 0.0;
  for (std::size_t j = 0; j < record.grid.size(); ++j) {
    const double x = record.grid[j];
    if (x < lo || x > hi) {
      continue;
    }
    worst = std::max(worst,
                     std::abs(snap.displacement[j] - evaluate_spacetime(wave, x, snap.time)));
  }
  return worst;
}

}  // namespace

TEST_SUITE_BEGIN("simulator");

TEST_CASE("boundary driver composes trace, harmonic, ramp") {
  const TravelingWave wave = solve_single_wave(Substrate{1.0, 5.0}, 1, 0.01);

  BoundaryDriver plain;
  plain.kind = BoundaryDriver::Kind::wave_trace;
  plain.wave = wave;

  BoundaryDriver ramped = plain;
  ramped.ramp_time = 2.0;

  CHECK(ramped.value(0.0) == 0.0);
  // Quintic smootherstep passes through 1/2 at the midpoint.
  CHECK(ramped.value(1.0) == 0.5 * plain.value(1.0));
  // After the ramp the signal is bit-identical to the unramped one.
  CHECK(ramped.value(2.5) == plain.value(2.5));
  CHECK(ramped.value(7.31) == plain.value(7.31));

  // The trace follows the wave passing x = 0.
  CHECK(plain.value(0.8) ==
        doctest::Approx(evaluate_spacetime(wave, 0.0, 0.8)).epsilon(1e-15));

  // Analytic rate against a central difference, including through the ramp.
  const double h = 1e-6;
  for (const double t : {0.3, 1.2, 1.9, 2.4, 5.0}) {
    const double fd = (ramped.value(t + h) - ramped.value(t - h)) / (2.0 * h);
    CHECK(ramped.rate(t) == doctest::Approx(fd).epsilon(1e-5));
  }

  BoundaryDriver harmonic;
  harmonic.harmonic_amplitude = 0.003;
  harmonic.harmonic_frequency = 4.0;
  CHECK(harmonic.value(0.7) ==
        doctest::Approx(0.003 * std::sin(4.0 * 0.7)).epsilon(1e-15));
  CHECK(harmonic.rate(0.7) ==
        doctest::Approx(0.003 * 4.0 * std::cos(4.0 * 0.7)).epsilon(1e-15));
  CHECK(harmonic.magnitude() == doctest::Approx(0.003).epsilon(1e-15));
}

TEST_CASE("initial condition shapes and supports") {
  InitialCondition bump;
  bump.kind = InitialCondition::Kind::cosine_bump;
  bump.amplitude = 0.02;
  bump.center = 3.0;
  bump.halfwidth = 1.0;
  CHECK(bump.displacement(3.0) == doctest::Approx(0.02).epsilon(1e-15));
  CHECK(bump.displacement(2.0) == 0.0);
  CHECK(bump.displacement(4.1) == 0.0);
  CHECK(bump.displacement(3.5) == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(bump.velocity(3.0) == 0.0);
  CHECK(bump.support_right() == doctest::Approx(4.0));

  InitialCondition sinusoid;
  sinusoid.kind = InitialCondition::Kind::decaying_sinusoid;
  sinusoid.amplitude = 0.01;
  sinusoid.wavenumber = 2.0;
  sinusoid.decay = 1.5;
  CHECK(sinusoid.displacement(0.4) ==
        doctest::Approx(0.01 * std::sin(0.8) * std::exp(-0.6)).epsilon(1e-15));
  CHECK(sinusoid.support_right() == doctest::Approx(24.0));

  InitialCondition level;
  level.kind = InitialCondition::Kind::constant;
  level.constant_value = -0.01;
  CHECK(level.displacement(5.0) == -0.01);
  CHECK_FALSE(std::isfinite(level.support_right()));
  level.offset = -0.01;  // shifted variable has a quiet tail again
  CHECK(level.support_right() == 0.0);
}

TEST_CASE("prepare_config fills the documented defaults") {
  const TravelingWave wave = solve_single_wave(Substrate{1.0, 5.0}, 1, 0.01);
  SimConfig config = base_config(wave.substrate);
  config.t_end = 10.0;
  config.boundary.kind = BoundaryDriver::Kind::wave_trace;
  config.boundary.wave = wave;
  prepare_config(config);

  CHECK(config.dx == doctest::Approx(1.0 / 200.0).epsilon(1e-15));
  CHECK(config.dt == doctest::Approx(stable_dt(config, config.dx)).epsilon(1e-15));
  CHECK(config.base_speed * config.dt / config.dx <= 0.9 * (1.0 + 1e-12));
  // t_end lands on a step multiple at or just past the request.
  const double steps = config.t_end / config.dt;
  CHECK(std::abs(steps - std::round(steps)) < 1e-9);
  CHECK(config.t_end >= 10.0 - 1e-9);
  // Far boundary margin over the fastest signal.
  const double speed = wave.phase_speed;
  CHECK(config.domain_length >= 1.1 * speed * config.t_end - 1e-9);
  REQUIRE(config.probe_positions.size() == 1);
  CHECK(config.probe_positions[0] == doctest::Approx(0.25 * config.domain_length));
  CHECK(config.reference_amplitude > 0.0);

  // Explicit choices are respected.
  SimConfig manual = base_config(Substrate{1.0, 5.0});
  manual.t_end = 1.0;
  manual.dx = 0.5;
  manual.dt = 0.3;
  manual.domain_length = 12.0;
  manual.initial.kind = InitialCondition::Kind::cosine_bump;
  manual.initial.amplitude = 0.01;
  manual.initial.center = 1.0;
  manual.initial.halfwidth = 0.5;
  prepare_config(manual);
  CHECK(manual.dx == 0.5);
  CHECK(manual.dt == 0.3);
  CHECK(manual.t_end == doctest::Approx(1.2).epsilon(1e-15));  // 4 steps of 0.3
}

TEST_CASE("prepare_config rejects unstable or inconsistent setups") {
  SimConfig config = base_config(Substrate{1.0, 5.0});
  config.t_end = 1.0;
  config.initial.kind = InitialCondition::Kind::cosine_bump;
  config.initial.amplitude = 0.01;
  config.initial.center = 0.5;
  config.initial.halfwidth = 0.25;

  SUBCASE("courant violation") {
    config.dx = 0.01;
    config.dt = 0.02;
    CHECK_THROWS_AS(prepare_config(config), std::invalid_argument);
  }
  SUBCASE("reaction bound violation") {
    config.substrate = Substrate{90000.0, 90000.0};
    config.dx = 0.2;
    config.dt = 0.01;  // dt^2 * 90000 = 9 >= 2
    CHECK_THROWS_AS(prepare_config(config), std::invalid_argument);
  }
  SUBCASE("domain too short for the quiet far boundary") {
    config.domain_length = 0.5 * (1.1 * config.t_end);
    CHECK_THROWS_AS(prepare_config(config), std::invalid_argument);
  }
  SUBCASE("periodic initial field needs an explicit domain") {
    config.initial.kind = InitialCondition::Kind::wave_field;
    config.initial.wave = solve_single_wave(Substrate{1.0, 5.0}, 1, 0.01);
    CHECK_THROWS_AS(prepare_config(config), std::invalid_argument);
  }
  SUBCASE("probe outside the domain") {
    config.probe_positions = {50.0};
    CHECK_THROWS_AS(prepare_config(config), std::invalid_argument);
  }
  SUBCASE("snapshot beyond the simulated span") {
    config.snapshot_times = {4.0};
    CHECK_THROWS_AS(prepare_config(config), std::invalid_argument);
  }
  SUBCASE("negative t_end") {
    config.t_end = -1.0;
    CHECK_THROWS_AS(prepare_config(config), std::invalid_argument);
  }
}

TEST_CASE("first step is the second-order Taylor start") {
  SimConfig config = base_config(Substrate{1.0, 5.0});
  config.t_end = 1.0;
  config.dx = 0.05;
  config.dt = 0.02;
  config.domain_length = 4.2;
  config.initial.kind = InitialCondition::Kind::decaying_sinusoid;
  config.initial.amplitude = 0.01;
  config.initial.wavenumber = 7.0;
  config.initial.decay = 12.0;  // quiet beyond x = 3, within the domain margin
  prepare_config(config);

  const SimState state = first_step(config);
  CHECK(state.time == config.dt);
  CHECK(state.step_index == 1);
  CHECK(state.previous.front() == config.boundary.value(0.0));
  CHECK(state.current.front() == config.boundary.value(config.dt));
  CHECK(state.current.back() == 0.0);

  for (const std::size_t j : {std::size_t{1}, std::size_t{7}, std::size_t{23}}) {
    const double w0 = state.previous[j];
    const double laplacian = (state.previous[j + 1] - 2.0 * w0 + state.previous[j - 1]) /
                             (config.dx * config.dx);
    const double k = w0 <= 0.0 ? config.substrate.k1 : config.substrate.k2;
    const double expected = w0 + 0.5 * config.dt * config.dt * (laplacian - k * w0);
    CHECK(state.current[j] == doctest::Approx(expected).epsilon(1e-15));
  }
}

TEST_CASE("equal-stiffness march reproduces the exact wave at second order") {
  // With k1 = k2 the closed-form wave is a plain sinusoid and an exact
  // solution of the (now linear) field equation; the march must converge to
  // it at O(dx^2) with dt tied to dx.
  const TravelingWave wave = solve_single_wave(Substrate{4.0, 4.0}, 1, 0.01);
  REQUIRE(wave.alpha == doctest::Approx(0.5).epsilon(1e-15));

  const auto error_at = [&](double dx) {
    SimConfig config = base_config(wave.substrate);
    config.t_end = 2.0;
    config.dx = dx;
    config.domain_length = 6.0;
    config.boundary.kind = BoundaryDriver::Kind::wave_trace;
    config.boundary.wave = wave;
    config.initial.kind = InitialCondition::Kind::wave_field;
    config.initial.wave = wave;
    config.snapshot_times = {2.0};
    config.energy_stride = 0;
    const RunRecord record = run(config);
    // Stay clear of the zero far boundary: contamination travels in from
    // x = 6 at the wave speed (~1.05), so [0.5, 3] is untouched at t = 2.
    return window_error(record, record.snapshots.front(), wave, 0.5, 3.0);
  };

  const double coarse = error_at(1.0 / 50.0);
  const double fine = error_at(1.0 / 100.0);
  CHECK(coarse < 2e-4);
  CHECK(fine < 1e-4);
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.35));
}

TEST_CASE("negating the drive and swapping stiffnesses negates the field") {
  const Substrate substrate{1.0, 5.0};
  const TravelingWave wave = solve_single_wave(substrate, 1, 0.01);

  SimConfig forward = base_config(substrate);
  forward.t_end = 3.0;
  forward.boundary.kind = BoundaryDriver::Kind::wave_trace;
  forward.boundary.wave = wave;
  forward.boundary.ramp_time = 1.0;
  forward.snapshot_times = {3.0};
  forward.energy_stride = 0;

  SimConfig mirrored = forward;
  mirrored.substrate = Substrate{substrate.k2, substrate.k1};
  mirrored.boundary.trace_scale = -1.0;

  const RunRecord a = run(forward);
  const RunRecord b = run(mirrored);
  REQUIRE(a.snapshots.size() == 1);
  REQUIRE(b.snapshots.size() == 1);
  REQUIRE(a.snapshots[0].displacement.size() == b.snapshots[0].displacement.size());
  double worst = 0.0;
  for (std::size_t j = 0; j < a.snapshots[0].displacement.size(); ++j) {
    worst = std::max(worst,
                     std::abs(a.snapshots[0].displacement[j] + b.snapshots[0].displacement[j]));
  }
  // The update is exactly equivariant under (w, k1, k2) -> (-w, k2, k1).
  CHECK(worst == 0.0);
}

TEST_CASE("snapshots land on the nearest step and carry the full grid") {
  SimConfig config = base_config(Substrate{1.0, 5.0});
  config.t_end = 1.0;
  config.dx = 0.05;
  config.dt = 0.01;
  config.domain_length = 2.0;
  config.initial.kind = InitialCondition::Kind::cosine_bump;
  config.initial.amplitude = 0.01;
  config.initial.center = 0.4;
  config.initial.halfwidth = 0.2;
  config.snapshot_times = {0.0, 0.503, 1.0};
  config.energy_stride = 0;

  const RunRecord record = run(config);
  REQUIRE(record.snapshots.size() == 3);
  CHECK(record.snapshots[0].time == 0.0);
  CHECK(record.snapshots[1].time == doctest::Approx(0.50).epsilon(1e-12));
  CHECK(record.snapshots[2].time == doctest::Approx(1.0).epsilon(1e-12));
  for (const Snapshot& snap : record.snapshots) {
    CHECK(snap.displacement.size() == record.grid.size());
  }
  CHECK(record.grid.front() == 0.0);
  CHECK(record.grid.back() == doctest::Approx(record.domain_length));
  // The t = 0 snapshot is the initial data itself.
  for (std::size_t j = 0; j < record.grid.size(); ++j) {
    CHECK(record.snapshots[0].displacement[j] ==
          doctest::Approx(config.initial.displacement(record.grid[j])).epsilon(1e-15));
  }
}

TEST_CASE("probe series differentiate their own record") {
  const TravelingWave wave = solve_single_wave(Substrate{1.0, 5.0}, 1, 0.01);
  SimConfig config = base_config(wave.substrate);
  config.t_end = 2.0;
  config.boundary.kind = BoundaryDriver::Kind::wave_trace;
  config.boundary.wave = wave;
  config.probe_positions = {0.5, 1.25};
  config.energy_stride = 0;

  const RunRecord record = run(config);
  REQUIRE(record.probes.size() == 2);
  for (const ProbeSeries& series : record.probes) {
    const std::size_t m = series.times.size();
    REQUIRE(m >= 5);
    CHECK(series.displacement.size() == m);
    CHECK(series.velocity.size() == m);
    CHECK(series.grid_index >= 0);
    CHECK(series.position == doctest::Approx(record.grid[series.grid_index]));
    const double dt = series.times[1] - series.times[0];
    for (const std::size_t i : {std::size_t{1}, m / 2, m - 2}) {
      const double centered =
          (series.displacement[i + 1] - series.displacement[i - 1]) / (2.0 * dt);
      CHECK(series.velocity[i] == doctest::Approx(centered).epsilon(1e-12));
    }
    const std::vector<double>& f = series.displacement;
    CHECK(series.velocity.front() ==
          doctest::Approx((-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dt)).epsilon(1e-12));
    CHECK(series.velocity.back() ==
          doctest::Approx((3.0 * f[m - 1] - 4.0 * f[m - 2] + f[m - 3]) / (2.0 * dt))
              .epsilon(1e-12));
  }
  // Probes snap to grid nodes.
  CHECK(record.probes[0].position == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("energy ledger balances against the boundary flux") {
  const TravelingWave wave = solve_single_wave(Substrate{1.0, 5.0}, 1, 0.01);
  const double tau = period_frequency(wave).period;

  SimConfig config = base_config(wave.substrate);
  config.t_end = 10.0;
  config.boundary.kind = BoundaryDriver::Kind::wave_trace;
  config.boundary.wave = wave;
  config.boundary.ramp_time = 3.0 * tau;
  config.energy_stride = 1;

  const RunRecord record = run(config);
  REQUIRE_FALSE(record.energy.empty());
  CHECK(record.cumulative_balance_error < 1e-4);

  // Midpoint times: first sample at dt/2, spacing = stride * dt.
  CHECK(record.energy.front().time == doctest::Approx(0.5 * record.dt).epsilon(1e-12));
  CHECK(record.energy[1].time - record.energy[0].time ==
        doctest::Approx(record.dt).epsilon(1e-9));

  double peak_total = 0.0;
  for (const EnergySample& sample : record.energy) {
    CHECK(sample.total == sample.kinetic + sample.potential);
    peak_total = std::max(peak_total, std::abs(sample.total));
  }
  double worst_residual = 0.0;
  for (const EnergySample& sample : record.energy) {
    worst_residual = std::max(worst_residual, sample.balance_residual);
  }
  // Step-by-step defect of the discrete ledger: only the piecewise-linear
  // reaction contributes, at O(dt^2) of the tracked energy.
  CHECK(worst_residual < 5e-5 * peak_total);

  // Energy flows in while the drive does work: total grows from zero.
  CHECK(record.energy.front().total < 1e-3 * peak_total);
  CHECK(record.energy.back().total > 0.1 * peak_total);
}

TEST_CASE("energy stride thins or disables the ledger") {
  SimConfig config = base_config(Substrate{1.0, 5.0});
  config.t_end = 0.5;
  config.initial.kind = InitialCondition::Kind::cosine_bump;
  config.initial.amplitude = 0.01;
  config.initial.center = 0.3;
  config.initial.halfwidth = 0.2;

  SimConfig thinned = config;
  thinned.energy_stride = 7;
  const RunRecord some = run(thinned);
  REQUIRE(some.energy.size() >= 2);
  CHECK(some.energy[1].time - some.energy[0].time ==
        doctest::Approx(7.0 * some.dt).epsilon(1e-9));

  SimConfig disabled = config;
  disabled.energy_stride = 0;
  const RunRecord none = run(disabled);
  CHECK(none.energy.empty());
  CHECK(none.cumulative_balance_error == 0.0);
}

TEST_CASE("marginal step sizes that pass both bounds still blow up and are caught") {
  // courant 0.8 and dt^2*k = 1.92 each pass, but the combined restriction
  // fails: the march must detect the growth instead of returning garbage.
  SimConfig config = base_config(Substrate{30000.0, 30000.0});
  config.t_end = 10.0;
  config.dx = 0.01;
  config.dt = 0.008;
  config.initial.kind = InitialCondition::Kind::cosine_bump;
  config.initial.amplitude = 0.01;
  config.initial.center = 0.2;
  config.initial.halfwidth = 0.1;
  config.energy_stride = 0;
  CHECK_THROWS_AS(run(config), InstabilityError);
}

TEST_CASE("loaded run rests on the branch equilibrium ahead of the front") {
  const Substrate substrate{1.0, 2.0};
  const double alpha = 1.2 * alpha_critical(substrate);
  const LoadedWave wave = solve_loaded_wave(substrate, -0.01, alpha);
  const double equilibrium = -0.01 / substrate.k1;

  SimConfig config;  // run_loaded copies substrate/load/scales from the wave
  config.t_end = 6.0;
  config.snapshot_times = {6.0};
  config.probe_positions = {2.0};
  config.boundary.ramp_time = 2.0;
  config.energy_stride = 0;

  const RunRecord record = run_loaded(config, wave);
  REQUIRE(record.snapshots.size() == 1);
  const Snapshot& snap = record.snapshots.front();

  // Ahead of anything the drive can have reached, the cable sits exactly on
  // the loaded equilibrium of the compression branch.
  const double front = wave.phase_speed * 6.0;
  double worst_far = 0.0;
  for (std::size_t j = 0; j < record.grid.size(); ++j) {
    if (record.grid[j] > front + 0.2 && record.grid[j] < record.domain_length - 2.0 * record.dx) {
      worst_far = std::max(worst_far, std::abs(snap.displacement[j] - equilibrium));
    }
  }
  CHECK(worst_far < 1e-9);

  // Behind the front the field stays within a modest margin of the wave's
  // closed-form extrema.
  const LoadedExtrema bounds = extrema(wave);
  const double span = bounds.w_max - bounds.w_min;
  double low = 0.0;
  double high = 0.0;
  for (std::size_t j = 0; j < record.grid.size(); ++j) {
    low = std::min(low, snap.displacement[j]);
    high = std::max(high, snap.displacement[j]);
  }
  CHECK(low > bounds.w_min - 0.25 * span);
  CHECK(high < bounds.w_max + 0.25 * span);

  // The probe eventually leaves the equilibrium and oscillates.
  const ProbeSeries& probe = record.probes.front();
  const double probe_range =
      *std::max_element(probe.displacement.begin(), probe.displacement.end()) -
      *std::min_element(probe.displacement.begin(), probe.displacement.end());
  CHECK(probe_range > 0.5 * span);
}

TEST_CASE("run_loaded rejects a load-free wave") {
  const TravelingWave free_wave = solve_single_wave(Substrate{1.0, 2.0}, 1, 0.01);
  LoadedWave fake;
  fake.substrate = free_wave.substrate;
  fake.load = 0.0;
  SimConfig config;
  config.t_end = 1.0;
  CHECK_THROWS_AS(run_loaded(config, fake), std::invalid_argument);
}

TEST_CASE("repeated runs are deterministic") {
  const TravelingWave wave = solve_single_wave(Substrate{1.0, 5.0}, 1, 0.01);
  SimConfig config = base_config(wave.substrate);
  config.t_end = 1.5;
  config.boundary.kind = BoundaryDriver::Kind::wave_trace;
  config.boundary.wave = wave;
  config.snapshot_times = {1.5};

  const RunRecord a = run(config);
  const RunRecord b = run(config);
  CHECK(a.snapshots[0].displacement == b.snapshots[0].displacement);
  CHECK(a.probes[0].displacement == b.probes[0].displacement);
  REQUIRE(a.energy.size() == b.energy.size());
  CHECK(a.cumulative_balance_error == b.cumulative_balance_error);
}

TEST_SUITE_END();
