#include "cablewave/execute.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cablewave/diagnostics.hpp"
#include "cablewave/errors.hpp"
#include "cablewave/loaded_wave.hpp"
#include "cablewave/simulator.hpp"
#include "cablewave/stability.hpp"
#include "cablewave/traveling_wave.hpp"

namespace cablewave {

namespace {

Substrate substrate_of(const ExperimentSpec& spec) {
  return Substrate{spec.number("k1"), spec.number("k2")};
}

void add_fact(RunArtifacts& artifacts, const std::string& key, double value) {
  artifacts.facts.emplace_back(key, format_number(value));
}

void add_fact_text(RunArtifacts& artifacts, const std::string& key, std::string value) {
  artifacts.facts.emplace_back(key, std::move(value));
}

/// Requested scan ceiling: 0 means "use the library default".
double scan_limit_of(const ExperimentSpec& spec) {
  const double requested = spec.number_or("a-max", 0.0);
  return requested > 0.0 ? requested : -1.0;
}

void add_wave_facts(RunArtifacts& artifacts, const TravelingWave& wave) {
  const PeriodFrequency pf = period_frequency(wave);
  add_fact(artifacts, "alpha", wave.alpha);
  add_fact(artifacts, "phase_speed", wave.phase_speed);
  add_fact(artifacts, "phase_speed_squared", wave.phase_speed_squared);
  add_fact(artifacts, "period", pf.period);
  add_fact(artifacts, "angular_frequency", pf.angular_frequency);
  add_fact(artifacts, "trough",
           -wave.amplitude * std::sqrt(wave.substrate.k2 / wave.substrate.k1));
}

void add_loaded_facts(RunArtifacts& artifacts, const LoadedWave& wave) {
  const LoadedPeriodFrequency pf = period_frequency(wave);
  const LoadedExtrema bounds = extrema(wave);
  add_fact(artifacts, "alpha", wave.alpha);
  add_fact(artifacts, "alpha_critical", alpha_critical(wave.substrate));
  add_fact(artifacts, "load", wave.load);
  add_fact(artifacts, "wavenumber", wave.wavenumber);
  add_fact(artifacts, "tension_wavenumber", wave.tension_wavenumber());
  add_fact(artifacts, "phase_speed", wave.phase_speed);
  add_fact(artifacts, "period", pf.period);
  add_fact(artifacts, "angular_frequency", pf.angular_frequency);
  add_fact(artifacts, "w_min", bounds.w_min);
  add_fact(artifacts, "w_max", bounds.w_max);
  add_fact(artifacts, "w_min_normalized", bounds.w_min_normalized);
  add_fact(artifacts, "w_max_normalized", bounds.w_max_normalized);
}

void add_run_facts(RunArtifacts& artifacts, const RunRecord& record) {
  add_fact(artifacts, "dx", record.dx);
  add_fact(artifacts, "dt", record.dt);
  add_fact(artifacts, "domain_length", record.domain_length);
  add_fact(artifacts, "t_end", record.t_end);
  add_fact(artifacts, "steps", std::round(record.t_end / record.dt));
  if (!record.energy.empty()) {
    add_fact(artifacts, "cumulative_balance_error", record.cumulative_balance_error);
  }
}

Table probes_table(const RunRecord& record) {
  Table table;
  table.name = "probes";
  table.columns = {"time", "x", "w", "wdot"};
  for (const ProbeSeries& probe : record.probes) {
    for (std::size_t i = 0; i < probe.times.size(); ++i) {
      table.rows.push_back(
          {probe.times[i], probe.position, probe.displacement[i], probe.velocity[i]});
    }
  }
  return table;
}

Table snapshots_table(const RunRecord& record) {
  Table table;
  table.name = "snapshots";
  table.columns = {"time", "x", "w"};
  for (const Snapshot& snapshot : record.snapshots) {
    for (std::size_t i = 0; i < record.grid.size(); ++i) {
      table.rows.push_back({snapshot.time, record.grid[i], snapshot.displacement[i]});
    }
  }
  return table;
}

Table energy_table(const RunRecord& record) {
  Table table;
  table.name = "energy";
  table.columns = {"time", "kinetic", "potential", "total", "boundary_flux",
                   "balance_residual"};
  for (const EnergySample& sample : record.energy) {
    table.rows.push_back({sample.time, sample.kinetic, sample.potential, sample.total,
                          sample.boundary_flux, sample.balance_residual});
  }
  return table;
}

void fill_sim_numerics(SimConfig& config, const ExperimentSpec& spec) {
  config.t_end = spec.number("t-end");
  config.dx = spec.number_or("dx", 0.0);
  config.dt = spec.number_or("dt", 0.0);
  config.domain_length = spec.number_or("domain-length", 0.0);
  config.probe_positions = spec.list("probes");
  config.snapshot_times = spec.list("snapshot-times");
  config.energy_stride = static_cast<int>(spec.integer_or("energy-stride", 1));
  config.boundary.ramp_time = spec.number_or("ramp-time", 0.0);
}

RunArtifacts execute_analytic(const ExperimentSpec& spec) {
  RunArtifacts artifacts;
  artifacts.spec = spec;
  const TravelingWave wave = solve_single_wave(
      substrate_of(spec), static_cast<int>(spec.integer("n")), spec.number("amplitude"),
      spec.number("L"), spec.number("v"));
  const long samples = spec.integer("samples");
  Table table;
  table.name = "profile";
  table.columns = {"xi", "w"};
  table.rows.reserve(static_cast<std::size_t>(samples));
  for (long i = 0; i < samples; ++i) {
    const double xi = static_cast<double>(i) / static_cast<double>(samples - 1);
    table.rows.push_back({xi, profile(wave, xi)});
  }
  artifacts.tables.push_back(std::move(table));
  add_wave_facts(artifacts, wave);
  add_fact(artifacts, "alpha_critical", alpha_critical(wave.substrate));
  return artifacts;
}

RunArtifacts execute_dispersion(const ExperimentSpec& spec) {
  RunArtifacts artifacts;
  artifacts.spec = spec;
  const Substrate substrate = substrate_of(spec);
  const double alpha = spec.number("alpha");
  const int grid = static_cast<int>(spec.integer("grid"));
  const DispersionScan scan = scan_roots(substrate, alpha, scan_limit_of(spec), grid);

  Table roots;
  roots.name = "roots";
  roots.columns = {"branch", "wavenumber", "tension_wavenumber", "phase_speed"};
  const double ratio = std::sqrt(substrate.k2 / substrate.k1);
  for (std::size_t i = 0; i < scan.roots.size(); ++i) {
    const double a = scan.roots[i];
    const double c = std::sqrt(1.0 + substrate.k1 / (a * a));
    roots.rows.push_back({static_cast<double>(i), a, a * ratio, c});
  }
  artifacts.tables.push_back(std::move(roots));

  Table singular;
  singular.name = "singularities";
  singular.columns = {"index", "wavenumber"};
  for (std::size_t i = 0; i < scan.singularities.size(); ++i) {
    singular.rows.push_back({static_cast<double>(i), scan.singularities[i]});
  }
  artifacts.tables.push_back(std::move(singular));

  const long samples = spec.integer("samples");
  Table residual;
  residual.name = "residual";
  residual.columns = {"wavenumber", "residual", "near_pole"};
  residual.rows.reserve(static_cast<std::size_t>(samples));
  for (long i = 1; i <= samples; ++i) {
    const double a = scan.a_max * static_cast<double>(i) / static_cast<double>(samples);
    try {
      residual.rows.push_back({a, dispersion_residual(substrate, alpha, a), 0.0});
    } catch (const SingularPointError&) {
      residual.rows.push_back({a, 0.0, 1.0});
    }
  }
  artifacts.tables.push_back(std::move(residual));

  add_fact(artifacts, "alpha", alpha);
  add_fact(artifacts, "alpha_critical", alpha_critical(substrate));
  add_fact(artifacts, "scan_limit", scan.a_max);
  add_fact(artifacts, "root_count", static_cast<double>(scan.roots.size()));
  return artifacts;
}

RunArtifacts execute_simulate(const ExperimentSpec& spec) {
  RunArtifacts artifacts;
  artifacts.spec = spec;
  SimConfig config;
  config.substrate = substrate_of(spec);
  config.wavelength = spec.number("L");
  config.base_speed = spec.number("v");
  fill_sim_numerics(config, spec);

  std::optional<TravelingWave> wave;
  const std::string boundary = spec.text_or("boundary", "wave-trace");
  if (boundary == "wave-trace") {
    wave = solve_single_wave(config.substrate, static_cast<int>(spec.integer("n")),
                             spec.number("amplitude"), config.wavelength,
                             config.base_speed);
    config.boundary.kind = BoundaryDriver::Kind::wave_trace;
    config.boundary.wave = wave;
    config.boundary.trace_scale = spec.number_or("trace-scale", 1.0);
  } else if (boundary == "zero") {
    config.boundary.kind = BoundaryDriver::Kind::zero;
  } else {
    throw SpecError("invalid value: boundary " + boundary +
                    " needs the simulate-loaded command");
  }

  const std::string ic_kind = spec.text_or("ic-kind", "zero");
  if (ic_kind == "zero") {
    config.initial.kind = InitialCondition::Kind::zero;
  } else if (ic_kind == "decaying-sinusoid") {
    config.initial.kind = InitialCondition::Kind::decaying_sinusoid;
    config.initial.amplitude = spec.number_or("ic-amplitude", 0.0);
    config.initial.wavenumber = spec.number_or("ic-wavenumber", 0.0);
    config.initial.decay = spec.number_or("ic-decay", 0.0);
  } else if (ic_kind == "cosine-bump") {
    config.initial.kind = InitialCondition::Kind::cosine_bump;
    config.initial.amplitude = spec.number_or("ic-amplitude", 0.0);
    config.initial.center = spec.number_or("ic-center", 0.0);
    config.initial.halfwidth = spec.number_or("ic-halfwidth", 0.0);
  } else if (ic_kind == "constant") {
    config.initial.kind = InitialCondition::Kind::constant;
    config.initial.constant_value = spec.number_or("ic-constant", 0.0);
  } else if (ic_kind == "wave-field") {
    if (!wave) {
      wave = solve_single_wave(config.substrate, static_cast<int>(spec.integer("n")),
                               spec.number("amplitude"), config.wavelength,
                               config.base_speed);
    }
    config.initial.kind = InitialCondition::Kind::wave_field;
    config.initial.wave = wave;
  } else {
    throw SpecError("invalid value: ic-kind must name a supported initial state");
  }

  const RunRecord record = run(config);
  artifacts.tables.push_back(probes_table(record));
  artifacts.tables.push_back(snapshots_table(record));
  artifacts.tables.push_back(energy_table(record));
  if (wave) {
    add_wave_facts(artifacts, *wave);
  }
  add_run_facts(artifacts, record);
  return artifacts;
}

RunArtifacts execute_simulate_loaded(const ExperimentSpec& spec) {
  RunArtifacts artifacts;
  artifacts.spec = spec;
  const LoadedWave wave = solve_loaded_wave(
      substrate_of(spec), spec.number("p"), spec.number("alpha"),
      static_cast<int>(spec.integer("branch")), spec.number("L"), spec.number("v"),
      scan_limit_of(spec), static_cast<int>(spec.integer("grid")));

  SimConfig config;
  fill_sim_numerics(config, spec);
  const RunRecord record = run_loaded(config, wave);
  artifacts.tables.push_back(probes_table(record));
  artifacts.tables.push_back(snapshots_table(record));
  artifacts.tables.push_back(energy_table(record));
  add_loaded_facts(artifacts, wave);
  add_fact(artifacts, "equilibrium",
           wave.load < 0.0 ? wave.load / wave.substrate.k1 : wave.load / wave.substrate.k2);
  add_run_facts(artifacts, record);
  return artifacts;
}

RunArtifacts execute_stability(const ExperimentSpec& spec) {
  RunArtifacts artifacts;
  artifacts.spec = spec;
  const TravelingWave wave = solve_single_wave(
      substrate_of(spec), static_cast<int>(spec.integer("n")), spec.number("amplitude"),
      spec.number("L"), spec.number("v"));
  const PeriodFrequency pf = period_frequency(wave);

  SimConfig tpl;
  tpl.t_end = spec.number("t-end");
  tpl.dx = spec.number_or("dx", 0.0);
  tpl.dt = spec.number_or("dt", 0.0);
  tpl.domain_length = spec.number_or("domain-length", 0.0);
  tpl.energy_stride = 0;
  tpl.boundary.ramp_time = spec.number_or("ramp-time", 0.0);

  double probe_x = spec.number_or("probe-position", 0.0);
  if (probe_x <= 0.0) {
    const double domain = tpl.domain_length > 0.0
                              ? tpl.domain_length
                              : far_boundary_margin * wave.phase_speed * wave.base_speed *
                                    tpl.t_end;
    probe_x = 0.25 * domain;
  }
  tpl.probe_positions = {probe_x};

  Perturbation pert;
  const std::string kind = spec.text_or("perturbation", "boundary-harmonic");
  const double omega1 = spec.number_or("omega1-ratio", 1.1) * pf.angular_frequency;
  if (kind == "boundary-harmonic") {
    pert.kind = Perturbation::Kind::boundary_harmonic;
    pert.epsilon = spec.number_or("epsilon", 0.0);
    pert.frequency = omega1;
  } else if (kind == "initial-profile") {
    pert.kind = Perturbation::Kind::initial_profile;
    pert.epsilon = spec.number_or("epsilon", 0.0);
  } else {
    pert.kind = Perturbation::Kind::none;
  }

  const RunRecord record = perturbed_run(wave, pert, tpl);
  const double skip_requested = spec.number_or("skip-time", 0.0);
  const double skip = skip_requested > 0.0
                          ? skip_requested
                          : default_transient_skip(wave, probe_x);
  const ReturnMapSeries series = return_map(record, probe_x, pf.period, skip);
  const OrbitMetrics metrics = orbit_metrics(series);

  Table map_table;
  map_table.name = "return_map";
  map_table.columns = {"index", "time", "f", "fdot"};
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    map_table.rows.push_back({static_cast<double>(i), series.times[i],
                              series.displacement[i], series.velocity[i]});
  }
  artifacts.tables.push_back(std::move(map_table));

  Table probe_table;
  probe_table.name = "probe";
  probe_table.columns = {"time", "x", "w", "wdot"};
  const ProbeSeries& probe = record.probes.front();
  for (std::size_t i = 0; i < probe.times.size(); ++i) {
    probe_table.rows.push_back(
        {probe.times[i], probe.position, probe.displacement[i], probe.velocity[i]});
  }
  artifacts.tables.push_back(std::move(probe_table));

  add_wave_facts(artifacts, wave);
  add_fact(artifacts, "omega1", omega1);
  add_fact(artifacts, "epsilon", pert.epsilon);
  add_fact_text(artifacts, "perturbation", kind);
  add_fact(artifacts, "probe_position", series.probe_position);
  add_fact(artifacts, "skip_time", skip);
  add_fact(artifacts, "sample_count", static_cast<double>(metrics.count));
  add_fact(artifacts, "centroid_f", metrics.centroid_displacement);
  add_fact(artifacts, "centroid_fdot", metrics.centroid_velocity);
  add_fact(artifacts, "mean_radius", metrics.mean_radius);
  add_fact(artifacts, "radius_spread", metrics.radius_spread);
  add_fact(artifacts, "closure_score", metrics.closure_score);
  add_fact(artifacts, "min_radius", metrics.min_radius);
  add_fact(artifacts, "max_radius", metrics.max_radius);
  if (pert.kind == Perturbation::Kind::boundary_harmonic && pert.epsilon > 0.0) {
    try {
      add_fact(artifacts, "envelope_beat",
               envelope_beat_frequency(probe, pf.period, skip));
    } catch (const TooFewSamplesError&) {
      // Beat extraction needs several modulation cycles; omit the fact when
      // the run is too short for it.
    }
  }
  add_run_facts(artifacts, record);
  return artifacts;
}

RunArtifacts execute_floquet(const ExperimentSpec& spec) {
  RunArtifacts artifacts;
  artifacts.spec = spec;
  const TravelingWave wave = solve_single_wave(
      substrate_of(spec), static_cast<int>(spec.integer("n")), spec.number("amplitude"),
      spec.number("L"), spec.number("v"));
  const FloquetResult floquet = floquet_map(wave);

  Table table;
  table.name = "floquet";
  table.columns = {"alpha",          "phase_speed",    "m00",
                   "m01",            "m10",            "m11",
                   "trace",          "det",            "multiplier1_re",
                   "multiplier1_im", "multiplier2_re", "multiplier2_im",
                   "fixed_point_w",  "fixed_point_slope"};
  table.rows.push_back({wave.alpha, wave.phase_speed, floquet.monodromy.m00,
                        floquet.monodromy.m01, floquet.monodromy.m10, floquet.monodromy.m11,
                        floquet.monodromy.trace(), floquet.monodromy.det(),
                        floquet.multipliers[0].real(), floquet.multipliers[0].imag(),
                        floquet.multipliers[1].real(), floquet.multipliers[1].imag(),
                        floquet.fixed_point_displacement, floquet.fixed_point_slope});
  artifacts.tables.push_back(std::move(table));

  add_wave_facts(artifacts, wave);
  add_fact(artifacts, "trace", floquet.monodromy.trace());
  add_fact(artifacts, "det", floquet.monodromy.det());
  add_fact(artifacts, "fixed_point_w", floquet.fixed_point_displacement);
  add_fact(artifacts, "fixed_point_slope", floquet.fixed_point_slope);
  return artifacts;
}

RunArtifacts execute_extrema_sweep(const ExperimentSpec& spec) {
  RunArtifacts artifacts;
  artifacts.spec = spec;
  const Substrate substrate = substrate_of(spec);
  require_nondegenerate(substrate);
  const double load = spec.number("p");
  const int branch = static_cast<int>(spec.integer("branch"));
  const double a_max = scan_limit_of(spec);
  const int grid = static_cast<int>(spec.integer("grid"));
  const double alpha_min = spec.number("alpha-min");
  const double alpha_max = spec.number("alpha-max");
  const long count = spec.integer("alpha-count");
  const double critical = alpha_critical(substrate);

  Table sweep;
  sweep.name = "sweep";
  sweep.columns = {"alpha",          "load",          "wavenumber", "w_min_normalized",
                   "w_max_normalized", "near_critical", "solved"};
  sweep.rows.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    const double alpha =
        alpha_min + (alpha_max - alpha_min) * static_cast<double>(i) /
                        static_cast<double>(count - 1);
    const double near = std::abs(alpha - critical) < 0.02 ? 1.0 : 0.0;
    if (std::abs(alpha - critical) <= critical_alpha_window) {
      sweep.rows.push_back({alpha, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0});
      continue;
    }
    try {
      LoadedWave wave;
      try {
        wave = solve_loaded_wave(substrate, load, alpha, branch, 1.0, 1.0, a_max, grid);
      } catch (const InadmissibleLoadError&) {
        wave = solve_loaded_wave(substrate, -load, alpha, branch, 1.0, 1.0, a_max, grid);
      }
      const LoadedExtrema bounds = extrema(wave);
      sweep.rows.push_back({alpha, wave.load, wave.wavenumber, bounds.w_min_normalized,
                            bounds.w_max_normalized, near, 1.0});
    } catch (const NoRootError&) {
      sweep.rows.push_back({alpha, 0.0, 0.0, 0.0, 0.0, near, 0.0});
    }
  }
  artifacts.tables.push_back(std::move(sweep));
  add_fact(artifacts, "alpha_critical", critical);
  return artifacts;
}

}  // namespace

RunArtifacts execute_spec(const ExperimentSpec& spec) {
  switch (spec.command) {
    case Command::analytic:
      return execute_analytic(spec);
    case Command::dispersion:
      return execute_dispersion(spec);
    case Command::simulate:
      return execute_simulate(spec);
    case Command::simulate_loaded:
      return execute_simulate_loaded(spec);
    case Command::stability:
      return execute_stability(spec);
    case Command::floquet:
      return execute_floquet(spec);
    case Command::extrema_sweep:
      return execute_extrema_sweep(spec);
    case Command::verify:
      break;
  }
  throw std::invalid_argument("verify runs through run_scenario, not execute_spec");
}

}  // namespace cablewave
