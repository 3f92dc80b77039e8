#include "cablewave/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "cablewave/diagnostics.hpp"
#include "cablewave/experiment.hpp"
#include "cablewave/loaded_wave.hpp"
#include "cablewave/simulator.hpp"
#include "cablewave/stability.hpp"
#include "cablewave/traveling_wave.hpp"

namespace cablewave {

namespace {

/// Deterministic pseudo-random stream (splitmix64); no seeds are exposed
/// anywhere, so verification runs are exactly reproducible.
struct DeterministicStream {
  std::uint64_t state;

  double uniform() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z = z ^ (z >> 31);
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  }

  /// Log-uniform draw over (10^-2, 10^2).
  double stiffness() { return std::pow(10.0, -2.0 + 4.0 * uniform()); }
};

CriterionCheck make_check(std::string name, bool passed, double measured, double limit,
                          std::string detail) {
  CriterionCheck check;
  check.name = std::move(name);
  check.passed = passed && std::isfinite(measured);
  check.measured = measured;
  check.limit = limit;
  check.detail = std::move(detail);
  return check;
}

CriterionCheck check_at_most(std::string name, double measured, double limit,
                             std::string detail) {
  return make_check(std::move(name), measured <= limit, measured, limit, std::move(detail));
}

CriterionCheck check_at_least(std::string name, double measured, double limit,
                              std::string detail) {
  return make_check(std::move(name), measured >= limit, measured, limit, std::move(detail));
}

CriterionCheck check_within(std::string name, double measured, double lo, double hi,
                            std::string detail) {
  return make_check(std::move(name), measured >= lo && measured <= hi, measured, hi,
                    std::move(detail) + " (band [" + format_number(lo) + ", " +
                        format_number(hi) + "])");
}

// ---------------------------------------------------------------------------

ScenarioResult scenario_alpha_critical() {
  ScenarioResult result;
  const double measured = alpha_critical(Substrate{1.0, 2.0});
  const double gap = std::abs(measured - 0.585786);
  result.checks.push_back(check_at_most("critical-fraction-gap", gap, 1e-5,
                                        "k1=1 k2=2, computed " + format_number(measured)));
  return result;
}

ScenarioResult scenario_closed_form() {
  ScenarioResult result;
  DeterministicStream stream{0x5DEECE66DULL};
  double worst_junction = 0.0;
  double worst_swap = 0.0;
  for (int draw = 0; draw < 1000; ++draw) {
    const Substrate substrate{stream.stiffness(), stream.stiffness()};
    const TravelingWave wave = solve_single_wave(substrate);
    const double a = std::sqrt(substrate.k1 / (wave.phase_speed_squared - 1.0));
    const double b = a * std::sqrt(substrate.k2 / substrate.k1);
    worst_junction = std::max(worst_junction, std::abs(a * wave.alpha - std::numbers::pi));
    worst_junction =
        std::max(worst_junction, std::abs(b * (1.0 - wave.alpha) - std::numbers::pi));
    const TravelingWave swapped = solve_single_wave(substrate.swapped());
    worst_swap = std::max(worst_swap, std::abs(wave.alpha + swapped.alpha - 1.0));
  }
  result.checks.push_back(check_at_most("junction-residual-max", worst_junction, 1e-12,
                                        "1000 log-uniform stiffness pairs in (1e-2, 1e2)^2"));
  result.checks.push_back(check_at_most("swap-symmetry-max", worst_swap, 1e-12,
                                        "alpha(k1,k2) + alpha(k2,k1) = 1"));
  return result;
}

ScenarioResult scenario_dispersion_endpoints() {
  ScenarioResult result;
  const std::vector<Substrate> substrates = {{30.0, 1.0}, {1.0, 2.0}, {1.0, 10.0}};
  for (const Substrate& substrate : substrates) {
    const std::string tag =
        "k1=" + format_number(substrate.k1) + " k2=" + format_number(substrate.k2);
    {
      const double alpha = 1e-3;
      const DispersionScan scan = scan_roots(substrate, alpha);
      const double target = 2.0 * std::numbers::pi * std::sqrt(substrate.k1 / substrate.k2);
      const double measured = scan.roots.empty()
                                  ? std::numeric_limits<double>::quiet_NaN()
                                  : scan.roots.front();
      const double rel = std::abs(measured - target) / target;
      result.checks.push_back(check_at_most("root-low-alpha-" + format_number(substrate.k1) +
                                                "-" + format_number(substrate.k2),
                                            rel, 1e-3,
                                            tag + ", root " + format_number(measured) +
                                                " vs 2*pi*sqrt(k1/k2) = " +
                                                format_number(target)));
    }
    {
      const double alpha = 1.0 - 1e-3;
      const DispersionScan scan = scan_roots(substrate, alpha);
      const double target = 2.0 * std::numbers::pi;
      const double measured = scan.roots.empty()
                                  ? std::numeric_limits<double>::quiet_NaN()
                                  : scan.roots.front();
      const double rel = std::abs(measured - target) / target;
      result.checks.push_back(check_at_most("root-high-alpha-" + format_number(substrate.k1) +
                                                "-" + format_number(substrate.k2),
                                            rel, 1e-3,
                                            tag + ", root " + format_number(measured) +
                                                " vs 2*pi = " + format_number(target)));
    }
  }
  return result;
}

ScenarioResult scenario_energy_balance() {
  ScenarioResult result;
  const TravelingWave wave = solve_single_wave(Substrate{1.0, 5.0}, 1, 0.01, 1.0, 1.0);
  SimConfig config;
  config.boundary.kind = BoundaryDriver::Kind::wave_trace;
  config.boundary.wave = wave;
  config.substrate = wave.substrate;
  config.t_end = 40.0;
  config.energy_stride = 1;
  const RunRecord record = run(config);
  result.checks.push_back(check_at_most(
      "cumulative-balance-error", record.cumulative_balance_error, 1e-4,
      "k1=1 k2=5 amplitude=0.01 driven to t=40, drift relative to peak energy"));
  return result;
}

ScenarioResult scenario_wave_speed() {
  ScenarioResult result;
  const std::vector<Substrate> substrates = {{1.0, 1.0}, {1.0, 5.0}, {0.2, 1.0}};
  for (const Substrate& substrate : substrates) {
    const TravelingWave wave = solve_single_wave(substrate, 1, 0.01, 1.0, 1.0);
    const double tau = period_frequency(wave).period;
    SimConfig tpl;
    tpl.t_end = 30.0;
    tpl.probe_positions = {7.0, 7.4};
    tpl.boundary.ramp_time = 3.0 * tau;
    tpl.energy_stride = 0;
    const RunRecord record = perturbed_run(wave, Perturbation{}, tpl);
    const double window_start = 7.4 + 8.0 * tau;
    const double measured = measure_phase_speed(record, 0, 1, window_start);
    const double target = wave.phase_speed * wave.base_speed;
    const double rel = std::abs(measured - target) / target;
    result.checks.push_back(
        check_at_most("phase-speed-" + format_number(substrate.k1) + "-" +
                          format_number(substrate.k2),
                      rel, 0.01,
                      "measured " + format_number(measured) + " vs analytic " +
                          format_number(target)));
  }
  return result;
}

ScenarioResult scenario_settled_profile() {
  ScenarioResult result;
  const TravelingWave wave = solve_single_wave(Substrate{1.0, 5.0}, 1, 0.01, 1.0, 1.0);
  const double tau = period_frequency(wave).period;

  const auto settled_error = [&](double dx) {
    SimConfig tpl;
    tpl.t_end = 45.0;
    tpl.dx = dx;
    tpl.snapshot_times = {45.0};
    tpl.boundary.ramp_time = 10.0 * tau;  // long ramp so the turn-on tail dies out
    tpl.energy_stride = 0;
    const RunRecord record = perturbed_run(wave, Perturbation{}, tpl);
    return settled_profile_error(record.snapshots.front(), record.grid, wave, 5.0, 15.0)
        .linf_relative;
  };

  const double coarse = settled_error(1.0 / 200.0);
  const double fine = settled_error(1.0 / 400.0);
  const double ratio = coarse / fine;
  result.checks.push_back(check_at_most("settled-linf-relative", coarse, 0.02,
                                        "k1=1 k2=5 amplitude=0.01, window x in [5,15] at t=45"));
  result.checks.push_back(check_within("refinement-ratio", ratio, 2.8, 5.5,
                                       "coarse error " + format_number(coarse) +
                                           " over fine error " + format_number(fine) +
                                           ", second-order expectation 4"));
  return result;
}

LoadedWave solve_either_sign(const Substrate& substrate, double load, double alpha) {
  try {
    return solve_loaded_wave(substrate, load, alpha);
  } catch (const InadmissibleLoadError&) {
    return solve_loaded_wave(substrate, -load, alpha);
  }
}

ScenarioResult scenario_loaded_extrema() {
  ScenarioResult result;
  const Substrate substrate{1.0, 2.0};
  const double critical = alpha_critical(substrate);
  const double alpha = 1.2 * critical;
  const LoadedWave wave = solve_loaded_wave(substrate, -0.01, alpha);
  const LoadedExtrema analytic = extrema(wave);
  const double tau = period_frequency(wave).period;

  SimConfig config;
  config.t_end = 30.0;
  config.snapshot_times = {30.0};
  config.boundary.ramp_time = 3.0 * tau;
  config.energy_stride = 0;
  const RunRecord record = run_loaded(config, wave);
  const auto [sim_min, sim_max] = window_extrema(record.snapshots.front(), record.grid, 5.0,
                                                 15.0);

  result.checks.push_back(check_at_most(
      "trough-gap", std::abs(sim_min - analytic.w_min) / std::abs(analytic.w_min), 0.03,
      "simulated " + format_number(sim_min) + " vs analytic " + format_number(analytic.w_min)));
  result.checks.push_back(check_at_most(
      "crest-gap", std::abs(sim_max - analytic.w_max) / std::abs(analytic.w_max), 0.03,
      "simulated " + format_number(sim_max) + " vs analytic " + format_number(analytic.w_max)));

  const auto magnitude = [&](double a) {
    const LoadedWave w = solve_either_sign(substrate, -0.01, a);
    const LoadedExtrema e = extrema(w);
    return std::max(std::abs(e.w_min_normalized), std::abs(e.w_max_normalized));
  };
  const double below_near = magnitude(critical - 0.01);
  const double below_far = magnitude(critical - 0.25);
  const double above_near = magnitude(critical + 0.01);
  const double above_far = magnitude(critical + 0.25);
  result.checks.push_back(check_at_least(
      "divergence-below-critical", below_near / below_far, 3.0,
      "normalized swing at alpha_cr-0.01 over alpha_cr-0.25"));
  result.checks.push_back(check_at_least(
      "divergence-above-critical", above_near / above_far, 3.0,
      "normalized swing at alpha_cr+0.01 over alpha_cr+0.25"));
  return result;
}

ScenarioResult scenario_floquet() {
  ScenarioResult result;
  DeterministicStream stream{0xC0FFEEULL};
  double worst_multiplier = 0.0;
  double worst_det = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    const Substrate substrate{stream.stiffness(), stream.stiffness()};
    const TravelingWave wave = solve_single_wave(substrate);
    const FloquetResult floquet = floquet_map(wave);
    for (const std::complex<double>& multiplier : floquet.multipliers) {
      worst_multiplier = std::max(worst_multiplier, std::abs(multiplier - 1.0));
    }
    worst_det = std::max(worst_det, std::abs(floquet.monodromy.det() - 1.0));
  }
  result.checks.push_back(check_at_most("multiplier-gap-max", worst_multiplier, 1e-10,
                                        "|multiplier - 1| over 100 log-uniform substrates"));
  result.checks.push_back(
      check_at_most("determinant-gap-max", worst_det, 1e-12, "|det(monodromy) - 1|"));
  return result;
}

ScenarioResult scenario_return_map() {
  ScenarioResult result;
  const TravelingWave wave = solve_single_wave(Substrate{1.0, 5.0}, 1, 0.01, 1.0, 1.0);
  const PeriodFrequency pf = period_frequency(wave);
  const double probe_x = 5.0;
  const double skip = probe_x / wave.base_speed + 25.0 * pf.period;

  const auto orbit_for = [&](double epsilon) {
    SimConfig tpl;
    tpl.t_end = 70.0;
    tpl.probe_positions = {probe_x};
    tpl.boundary.ramp_time = 5.0 * pf.period;
    tpl.energy_stride = 0;
    Perturbation pert;
    if (epsilon > 0.0) {
      pert.kind = Perturbation::Kind::boundary_harmonic;
      pert.epsilon = epsilon;
      pert.frequency = std::numbers::sqrt2 * pf.angular_frequency;
    }
    const RunRecord record = perturbed_run(wave, pert, tpl);
    return orbit_metrics(return_map(record, probe_x, pf.period, skip));
  };

  const OrbitMetrics base = orbit_for(0.0);
  const OrbitMetrics small = orbit_for(0.001);
  const OrbitMetrics middle = orbit_for(0.003);
  const OrbitMetrics large = orbit_for(0.005);

  result.checks.push_back(check_at_most("unperturbed-collapse", base.max_radius,
                                        1e-3 * wave.amplitude,
                                        "largest stroboscopic deviation from the centroid"));
  result.checks.push_back(check_at_least(
      "radius-monotone",
      std::min(middle.mean_radius / small.mean_radius,
               large.mean_radius / middle.mean_radius),
      1.0,
      "mean radii " + format_number(small.mean_radius) + ", " +
          format_number(middle.mean_radius) + ", " + format_number(large.mean_radius)));
  result.checks.push_back(check_within("radius-ratio", large.mean_radius / small.mean_radius,
                                       3.5, 6.5,
                                       "mean radius at epsilon=0.005 over epsilon=0.001"));
  result.checks.push_back(check_at_least(
      "nested-loops", large.min_radius / small.max_radius, 1.0,
      "inner edge of the largest loop clears the outer edge of the smallest"));
  return result;
}

ScenarioResult scenario_envelope_beat() {
  ScenarioResult result;
  const TravelingWave wave = solve_single_wave(Substrate{1.0, 1.0}, 1, 0.01, 1.0, 1.0);
  const PeriodFrequency pf = period_frequency(wave);
  const double probe_x = 5.0;

  SimConfig tpl;
  tpl.t_end = 55.0;
  tpl.probe_positions = {probe_x};
  tpl.boundary.ramp_time = 3.0 * pf.period;
  tpl.energy_stride = 0;
  Perturbation pert;
  pert.kind = Perturbation::Kind::boundary_harmonic;
  pert.epsilon = 0.002;
  pert.frequency = 1.1 * pf.angular_frequency;
  const RunRecord record = perturbed_run(wave, pert, tpl);

  const double start = probe_x / wave.base_speed + 10.0 * pf.period;
  const double measured = envelope_beat_frequency(record.probes.front(), pf.period, start);
  const double target = pert.frequency - pf.angular_frequency;
  const double rel = std::abs(measured - target) / target;
  result.checks.push_back(check_at_most("beat-frequency-gap", rel, 0.10,
                                        "measured " + format_number(measured) +
                                            " vs omega1 - omega = " + format_number(target)));
  return result;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {
      "alpha-critical",  "closed-form",     "dispersion-endpoints", "energy-balance",
      "wave-speed",      "settled-profile", "loaded-extrema",       "floquet",
      "return-map",      "envelope-beat",
  };
  return names;
}

ScenarioResult run_scenario(const std::string& name) {
  const auto start = std::chrono::steady_clock::now();
  ScenarioResult result;
  if (name == "alpha-critical") {
    result = scenario_alpha_critical();
  } else if (name == "closed-form") {
    result = scenario_closed_form();
  } else if (name == "dispersion-endpoints") {
    result = scenario_dispersion_endpoints();
  } else if (name == "energy-balance") {
    result = scenario_energy_balance();
  } else if (name == "wave-speed") {
    result = scenario_wave_speed();
  } else if (name == "settled-profile") {
    result = scenario_settled_profile();
  } else if (name == "loaded-extrema") {
    result = scenario_loaded_extrema();
  } else if (name == "floquet") {
    result = scenario_floquet();
  } else if (name == "return-map") {
    result = scenario_return_map();
  } else if (name == "envelope-beat") {
    result = scenario_envelope_beat();
  } else {
    throw std::invalid_argument("unknown scenario: " + name);
  }
  result.scenario = name;
  result.passed = std::all_of(result.checks.begin(), result.checks.end(),
                              [](const CriterionCheck& check) { return check.passed; });
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string format_result(const ScenarioResult& result) {
  std::string text;
  for (const CriterionCheck& check : result.checks) {
    text += check.passed ? "[PASS] " : "[FAIL] ";
    text += result.scenario + ": " + check.name + " = " + format_number(check.measured) +
            " (limit " + format_number(check.limit) + ")";
    if (!check.detail.empty()) {
      text += " — " + check.detail;
    }
    text += "\n";
  }
  return text;
}

}  // namespace cablewave
