#include "cablewave/stability.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "cablewave/errors.hpp"

namespace cablewave {

Mat2 operator*(const Mat2& a, const Mat2& b) {
  return Mat2{a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
              a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

Mat2 rotation_block(double omega, double length) {
  if (omega == 0.0) {
    return Mat2{1.0, length, 0.0, 1.0};  // free shear: w'' = 0
  }
  const double phase = omega * length;
  const double c = std::cos(phase);
  const double s = std::sin(phase);
  return Mat2{c, s / omega, -omega * s, c};
}

FloquetResult floquet_map(const TravelingWave& wave) {
  const double c2 = wave.phase_speed_squared > 0.0 ? wave.phase_speed_squared
                                                   : wave.phase_speed * wave.phase_speed;
  if (!(c2 > 1.0)) {
    throw std::invalid_argument("floquet_map needs a supersonic wave (phase_speed > 1)");
  }
  // Profile equation in the co-moving frame: (c^2 - 1) W'' + k W = 0, one
  // harmonic oscillator per stiffness branch.
  const double a = std::sqrt(wave.substrate.k1 / (c2 - 1.0));
  const double b = a * std::sqrt(wave.substrate.k2 / wave.substrate.k1);
  const double tension_span = 1.0 / wave.repetitions - wave.alpha;

  const Mat2 sub_period = rotation_block(b, tension_span) * rotation_block(a, wave.alpha);
  Mat2 monodromy;  // identity
  for (int i = 0; i < wave.repetitions; ++i) {
    monodromy = sub_period * monodromy;
  }

  const double tr = monodromy.trace();
  const double det = monodromy.det();
  const std::complex<double> discriminant =
      std::sqrt(std::complex<double>(tr * tr - 4.0 * det, 0.0));

  FloquetResult result;
  result.monodromy = monodromy;
  result.multipliers = {0.5 * (tr + discriminant), 0.5 * (tr - discriminant)};
  result.fixed_point_displacement = profile(wave, 0.0);
  result.fixed_point_slope = profile_derivative(wave, 0.0);
  return result;
}

RunRecord perturbed_run(const TravelingWave& wave, const Perturbation& pert,
                        SimConfig template_config) {
  SimConfig config = std::move(template_config);
  config.substrate = wave.substrate;
  config.wavelength = wave.wavelength;
  config.base_speed = wave.base_speed;
  config.load = 0.0;
  config.shift = 0.0;
  const double ramp = config.boundary.ramp_time;
  config.boundary = BoundaryDriver{};
  config.boundary.kind = BoundaryDriver::Kind::wave_trace;
  config.boundary.wave = wave;
  config.boundary.ramp_time = ramp;
  config.initial = InitialCondition{};

  switch (pert.kind) {
    case Perturbation::Kind::none:
      break;
    case Perturbation::Kind::boundary_harmonic:
      config.boundary.harmonic_amplitude = pert.epsilon;
      config.boundary.harmonic_frequency =
          pert.frequency > 0.0 ? pert.frequency
                               : 1.1 * period_frequency(wave).angular_frequency;
      break;
    case Perturbation::Kind::initial_profile:
      config.initial.kind = InitialCondition::Kind::decaying_sinusoid;
      config.initial.amplitude = pert.epsilon;
      config.initial.wavenumber = initial_profile_wavenumber;
      config.initial.decay = initial_profile_decay;
      break;
  }
  return run(std::move(config));
}

RunRecord perturbed_run(const LoadedWave& wave, const Perturbation& pert,
                        SimConfig template_config) {
  SimConfig config = std::move(template_config);
  const double ramp = config.boundary.ramp_time;
  config.boundary = BoundaryDriver{};
  config.boundary.kind = BoundaryDriver::Kind::loaded_trace;
  config.boundary.loaded = wave;
  config.boundary.ramp_time = ramp;
  config.initial = InitialCondition{};

  switch (pert.kind) {
    case Perturbation::Kind::none:
      break;
    case Perturbation::Kind::boundary_harmonic:
      config.boundary.harmonic_amplitude = pert.epsilon;
      config.boundary.harmonic_frequency =
          pert.frequency > 0.0 ? pert.frequency
                               : 1.1 * period_frequency(wave).angular_frequency;
      break;
    case Perturbation::Kind::initial_profile: {
      config.initial.kind = InitialCondition::Kind::decaying_sinusoid;
      config.initial.amplitude = pert.epsilon;
      config.initial.wavenumber = initial_profile_wavenumber;
      config.initial.decay = initial_profile_decay;
      // Ride on top of the branch equilibrium: cancel the shift run_loaded
      // will add so the decaying shape becomes the shifted-variable field.
      const double equilibrium = wave.load < 0.0 ? wave.load / wave.substrate.k1
                                                 : wave.load / wave.substrate.k2;
      config.initial.offset = -equilibrium;
      break;
    }
  }
  return run_loaded(std::move(config), wave);
}

namespace {

/// Cubic Lagrange interpolation of a uniformly sampled series at fractional
/// index `s` (in samples).  The 4-point window is clamped at the ends.
double interpolate_uniform(const std::vector<double>& samples, double s) {
  const std::size_t m = samples.size();
  if (m == 1) {
    return samples[0];
  }
  if (m < 4) {  // linear fallback
    const double clamped = std::clamp(s, 0.0, static_cast<double>(m - 1));
    const std::size_t j = std::min(static_cast<std::size_t>(clamped), m - 2);
    const double theta = clamped - static_cast<double>(j);
    return samples[j] * (1.0 - theta) + samples[j + 1] * theta;
  }
  const double clamped = std::clamp(s, 0.0, static_cast<double>(m - 1));
  const long centered = static_cast<long>(std::floor(clamped)) - 1;
  const std::size_t j0 = static_cast<std::size_t>(
      std::clamp<long>(centered, 0, static_cast<long>(m) - 4));
  const double u = clamped - static_cast<double>(j0);
  double value = 0.0;
  for (int k = 0; k < 4; ++k) {
    double weight = 1.0;
    for (int i = 0; i < 4; ++i) {
      if (i != k) {
        weight *= (u - static_cast<double>(i)) / static_cast<double>(k - i);
      }
    }
    value += weight * samples[static_cast<std::size_t>(j0) + static_cast<std::size_t>(k)];
  }
  return value;
}

}  // namespace

ReturnMapSeries return_map(const RunRecord& record, double probe_position, double tau,
                           double skip_time) {
  if (record.probes.empty()) {
    throw std::invalid_argument("return_map needs a record with at least one probe");
  }
  if (!(tau > 0.0)) {
    throw std::invalid_argument("return_map needs a positive period tau");
  }
  const ProbeSeries* probe = &record.probes.front();
  for (const ProbeSeries& candidate : record.probes) {
    if (std::abs(candidate.position - probe_position) <
        std::abs(probe->position - probe_position)) {
      probe = &candidate;
    }
  }
  if (probe->times.size() < 2) {
    throw InsufficientDurationError("return_map needs a probe series with at least two samples");
  }

  const double t0 = probe->times.front();
  const double t_end = probe->times.back();
  const double start = std::ceil(std::max(skip_time, 0.0) / tau - 1e-9) * tau;
  const long count =
      start <= t_end ? static_cast<long>(std::floor((t_end - start) / tau + 1e-9)) + 1 : 0;
  if (count < 30) {
    throw InsufficientDurationError(
        "return_map needs at least 30 stroboscopic samples after the skip window, got " +
        std::to_string(std::max<long>(count, 0)));
  }

  ReturnMapSeries series;
  series.probe_position = probe->position;
  series.tau = tau;
  series.start_time = start;
  series.times.reserve(static_cast<std::size_t>(count));
  series.displacement.reserve(static_cast<std::size_t>(count));
  series.velocity.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    const double t = start + static_cast<double>(i) * tau;
    const double s = (t - t0) / record.dt;
    series.times.push_back(t);
    series.displacement.push_back(interpolate_uniform(probe->displacement, s));
    series.velocity.push_back(interpolate_uniform(probe->velocity, s));
  }
  return series;
}

double default_transient_skip(const TravelingWave& wave, double x0) {
  return x0 / wave.base_speed + 10.0 * period_frequency(wave).period;
}

double default_transient_skip(const LoadedWave& wave, double x0) {
  return x0 / wave.base_speed + 10.0 * period_frequency(wave).period;
}

OrbitMetrics orbit_metrics(const ReturnMapSeries& series) {
  const std::size_t n = series.displacement.size();
  if (n < 20) {
    throw TooFewSamplesError("orbit_metrics needs at least 20 stroboscopic samples, got " +
                             std::to_string(n));
  }
  const double velocity_weight = series.tau / (2.0 * std::numbers::pi);

  OrbitMetrics metrics;
  metrics.count = n;
  for (std::size_t i = 0; i < n; ++i) {
    metrics.centroid_displacement += series.displacement[i];
    metrics.centroid_velocity += series.velocity[i];
  }
  metrics.centroid_displacement /= static_cast<double>(n);
  metrics.centroid_velocity /= static_cast<double>(n);

  double radius_sum = 0.0;
  double radius_sq_sum = 0.0;
  metrics.min_radius = std::numeric_limits<double>::infinity();
  metrics.max_radius = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double df = series.displacement[i] - metrics.centroid_displacement;
    const double dg = (series.velocity[i] - metrics.centroid_velocity) * velocity_weight;
    const double radius = std::hypot(df, dg);
    radius_sum += radius;
    radius_sq_sum += radius * radius;
    metrics.min_radius = std::min(metrics.min_radius, radius);
    metrics.max_radius = std::max(metrics.max_radius, radius);
  }
  metrics.mean_radius = radius_sum / static_cast<double>(n);
  const double variance =
      std::max(0.0, radius_sq_sum / static_cast<double>(n) - metrics.mean_radius * metrics.mean_radius);
  metrics.radius_spread = std::sqrt(variance);
  metrics.closure_score =
      metrics.mean_radius > 0.0 ? metrics.radius_spread / metrics.mean_radius : 0.0;
  return metrics;
}

double orbit_distance(const ReturnMapSeries& series, std::size_t index, double ref_displacement,
                      double ref_velocity) {
  const double velocity_weight = series.tau / (2.0 * std::numbers::pi);
  return std::hypot(series.displacement.at(index) - ref_displacement,
                    (series.velocity.at(index) - ref_velocity) * velocity_weight);
}

}  // namespace cablewave
