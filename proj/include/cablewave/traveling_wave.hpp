#ifndef CABLEWAVE_TRAVELING_WAVE_HPP
#define CABLEWAVE_TRAVELING_WAVE_HPP

#include "cablewave/substrate.hpp"

namespace cablewave {

/// A closed-form periodic traveling wave on a taut cable resting on a bilinear
/// substrate, without distributed load.  One wavelength carries `repetitions`
/// identical sub-waves; each sub-wave has a compression lobe of width `alpha`
/// (where w <= 0) followed by a tension lobe of width 1/repetitions - alpha.
///
/// The profile is C1: piecewise sines whose values and slopes match at every
/// junction.  The tension-lobe peak equals `amplitude`; the compression lobe
/// dips to -amplitude * sqrt(k2/k1).
struct TravelingWave {
  Substrate substrate;
  double alpha{0.0};        ///< compression fraction of one sub-period, in (0, 1/repetitions)
  double phase_speed{0.0};  ///< nondimensional speed c > 1 (physical speed is c * base_speed)
  double phase_speed_squared{0.0};  ///< c² as solved, kept so c² − 1 never re-rounds
  double amplitude{1.0};    ///< free scale: peak of the tension lobe
  int repetitions{1};       ///< sub-waves per wavelength (n >= 1)
  double wavelength{1.0};   ///< physical length of one full period
  double base_speed{1.0};   ///< taut-string speed of the unsupported cable
};

/// Solves the junction conditions for the bilinear substrate in closed form.
/// For n sub-waves per period:
///   alpha = (1/n) * sqrt(k2) / (sqrt(k1) + sqrt(k2)),
///   c^2   = 1 + k1 * k2 / ((n*pi)^2 * (sqrt(k1) + sqrt(k2))^2).
/// Throws DegenerateSubstrateError unless k1 > 0 and k2 > 0.
TravelingWave solve_single_wave(const Substrate& substrate, int repetitions = 1,
                                double amplitude = 1.0, double wavelength = 1.0,
                                double base_speed = 1.0);

/// Wave height at reduced coordinate xi.  xi is wrapped to the half-open
/// interval [0, 1) first, so the seam xi = 1 is evaluated on the compression
/// branch (the value there is 0 either way).  Any real xi is accepted.
double profile(const TravelingWave& wave, double xi);

/// d(profile)/d(xi); continuous across junctions.
double profile_derivative(const TravelingWave& wave, double xi);

/// Field value w(x, t) = profile((x - c*v*t) / wavelength), the wave
/// translating rigidly at physical speed c * base_speed.
double evaluate_spacetime(const TravelingWave& wave, double x, double t);

struct PeriodFrequency {
  double period{0.0};             ///< time for one wavelength to pass a point: L / (c*v)
  double angular_frequency{0.0};  ///< 2*pi / period
};

/// Temporal period and angular frequency seen by a stationary observer.
PeriodFrequency period_frequency(const TravelingWave& wave);

enum class LimitKind {
  unilateral,         ///< tension stiffness -> 0 (cable free to lift off)
  unilaterally_rigid  ///< tension stiffness -> infinity
};

/// Degenerate-substrate limit data.  Reported as data, not an error: the
/// limits are informative even though no regular wave exists there.
struct LimitReport {
  LimitKind kind{};
  double alpha_limit{0.0};      ///< limiting compression fraction (0 or 1)
  double c_squared_limit{0.0};  ///< limiting squared speed from the closed form
  double c_limit{0.0};          ///< sqrt of the above
  bool regular_wave_exists{false};
};

/// Limits of the closed form as k2 -> 0 (unilateral: alpha -> 0, c -> 1) or
/// k2 -> infinity (unilaterally rigid: alpha -> 1, c^2 -> 1 + k1/pi^2).  Only
/// the compression stiffness of `substrate` enters.  In both limits the
/// regular wave ceases to exist, so regular_wave_exists is always false.
LimitReport limit_case(const Substrate& substrate, LimitKind kind);

}  // namespace cablewave

#endif
