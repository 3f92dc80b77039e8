#include "cablewave/traveling_wave.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cablewave {

namespace {

constexpr double pi = std::numbers::pi;

/// Unit-amplitude shape of one sub-period; `sub` in [0, 1/n).
double unit_shape(const TravelingWave& wave, double sub) {
  const double tension_width = 1.0 / wave.repetitions - wave.alpha;
  if (sub <= wave.alpha) {
    const double depth = std::sqrt(wave.substrate.k2 / wave.substrate.k1);
    return -depth * std::sin(sub * pi / wave.alpha);
  }
  return std::sin((sub - wave.alpha) * pi / tension_width);
}

double unit_shape_derivative(const TravelingWave& wave, double sub) {
  const double tension_width = 1.0 / wave.repetitions - wave.alpha;
  if (sub <= wave.alpha) {
    const double depth = std::sqrt(wave.substrate.k2 / wave.substrate.k1);
    return -depth * (pi / wave.alpha) * std::cos(sub * pi / wave.alpha);
  }
  return (pi / tension_width) * std::cos((sub - wave.alpha) * pi / tension_width);
}

/// Wraps xi into [0, 1), then into one sub-period [0, 1/n).
double sub_period_coordinate(const TravelingWave& wave, double xi) {
  double wrapped = xi - std::floor(xi);
  if (wrapped >= 1.0) wrapped = 0.0;  // guard against floor rounding at the seam
  if (wave.repetitions == 1) return wrapped;
  const double width = 1.0 / wave.repetitions;
  double sub = std::fmod(wrapped, width);
  if (sub >= width) sub = 0.0;
  return sub;
}

}  // namespace

TravelingWave solve_single_wave(const Substrate& substrate, int repetitions, double amplitude,
                                double wavelength, double base_speed) {
  require_nondegenerate(substrate);
  if (repetitions < 1) {
    throw std::invalid_argument("repetitions must be >= 1");
  }
  if (!(wavelength > 0.0) || !(base_speed > 0.0)) {
    throw std::invalid_argument("wavelength and base_speed must be positive");
  }
  const double root_sum = std::sqrt(substrate.k1) + std::sqrt(substrate.k2);
  const double n = static_cast<double>(repetitions);

  TravelingWave wave;
  wave.substrate = substrate;
  wave.alpha = std::sqrt(substrate.k2) / root_sum / n;
  const double c_squared =
      1.0 + substrate.k1 * substrate.k2 / ((n * pi) * (n * pi) * root_sum * root_sum);
  wave.phase_speed = std::sqrt(c_squared);
  wave.phase_speed_squared = c_squared;
  wave.amplitude = amplitude;
  wave.repetitions = repetitions;
  wave.wavelength = wavelength;
  wave.base_speed = base_speed;
  return wave;
}

double profile(const TravelingWave& wave, double xi) {
  return wave.amplitude * unit_shape(wave, sub_period_coordinate(wave, xi));
}

double profile_derivative(const TravelingWave& wave, double xi) {
  return wave.amplitude * unit_shape_derivative(wave, sub_period_coordinate(wave, xi));
}

double evaluate_spacetime(const TravelingWave& wave, double x, double t) {
  const double xi = (x - wave.phase_speed * wave.base_speed * t) / wave.wavelength;
  return profile(wave, xi);
}

PeriodFrequency period_frequency(const TravelingWave& wave) {
  PeriodFrequency pf;
  pf.period = wave.wavelength / (wave.phase_speed * wave.base_speed);
  pf.angular_frequency = 2.0 * pi / pf.period;
  return pf;
}

LimitReport limit_case(const Substrate& substrate, LimitKind kind) {
  if (!(substrate.k1 > 0.0)) {
    throw DegenerateSubstrateError("degenerate substrate: k1 must be strictly positive");
  }
  LimitReport report;
  report.kind = kind;
  report.regular_wave_exists = false;
  if (kind == LimitKind::unilateral) {
    report.alpha_limit = 0.0;
    report.c_squared_limit = 1.0;
  } else {
    report.alpha_limit = 1.0;
    report.c_squared_limit = 1.0 + substrate.k1 / (pi * pi);
  }
  report.c_limit = std::sqrt(report.c_squared_limit);
  return report;
}

}  // namespace cablewave
