#ifndef CABLEWAVE_STABILITY_HPP
#define CABLEWAVE_STABILITY_HPP

#include <array>
#include <complex>

#include "cablewave/simulator.hpp"

namespace cablewave {

struct Mat2 {
  double m00{1.0}, m01{0.0};
  double m10{0.0}, m11{1.0};

  [[nodiscard]] double det() const { return m00 * m11 - m01 * m10; }
  [[nodiscard]] double trace() const { return m00 + m11; }
};

Mat2 operator*(const Mat2& a, const Mat2& b);

/// Linearization of the profile equation around one period of the traveling
/// wave, obtained by composing the exact rotation blocks of the two stiffness
/// branches.  Because the phase-plane vector field is continuous across the
/// branch seam, no extra junction factors appear and the monodromy of the
/// solved wave is the identity: both multipliers equal +1.
struct FloquetResult {
  Mat2 monodromy;
  std::array<std::complex<double>, 2> multipliers{};
  double fixed_point_displacement{0.0};  ///< profile value at xi = 0 (zero)
  double fixed_point_slope{0.0};         ///< profile derivative at xi = 0
};

FloquetResult floquet_map(const TravelingWave& wave);

/// Exact flow map over a span `length` of the phase plane (w, w') for
/// w'' = -omega^2 w (one stiffness branch of the profile equation).
Mat2 rotation_block(double omega, double length);

/// Perturbation injected on top of an analytic wave for a simulated run.
struct Perturbation {
  enum class Kind {
    none,
    boundary_harmonic,  ///< adds epsilon * sin(frequency * t) to the boundary trace
    initial_profile     ///< starts from epsilon * sin(sqrt(2) x) exp(-0.8 x) at rest
  };

  Kind kind{Kind::none};
  double epsilon{0.0};
  double frequency{0.0};  ///< boundary_harmonic only; 0 -> 1.1 * wave frequency
};

inline constexpr double initial_profile_wavenumber = 1.4142135623730951;  // sqrt(2)
inline constexpr double initial_profile_decay = 0.8;

/// Drives `template_config` with the wave's boundary trace plus the requested
/// perturbation and runs it.  Fields substrate/wavelength/base_speed/boundary
/// /initial of the template are overwritten; the rest (t_end, resolution,
/// probes, ...) are taken as given.
RunRecord perturbed_run(const TravelingWave& wave, const Perturbation& pert,
                        SimConfig template_config);
RunRecord perturbed_run(const LoadedWave& wave, const Perturbation& pert,
                        SimConfig template_config);

/// Stroboscopic displacement/velocity samples of one probe at exact multiples
/// of the period tau, interpolated cubically from the recorded series.
struct ReturnMapSeries {
  double probe_position{0.0};
  double tau{0.0};
  double start_time{0.0};  ///< first sample time (smallest multiple of tau >= skip)
  std::vector<double> times;
  std::vector<double> displacement;
  std::vector<double> velocity;
};

/// Builds the stroboscopic map of the probe nearest `probe_position`.
/// Samples start at the first multiple of tau at or after `skip_time`.
/// Throws InsufficientDurationError when fewer than 30 samples fit between
/// the skip time and the end of the series.
ReturnMapSeries return_map(const RunRecord& record, double probe_position, double tau,
                           double skip_time);

/// Default transient skip for a probe at x0: estimated front arrival plus
/// ten periods.
double default_transient_skip(const TravelingWave& wave, double x0);
double default_transient_skip(const LoadedWave& wave, double x0);

/// Shape statistics of a stroboscopic orbit.  Distances are measured in the
/// plane (f, f' * tau / (2 pi)) so displacement and velocity carry equal
/// weight.  Throws TooFewSamplesError below 20 samples.
struct OrbitMetrics {
  double centroid_displacement{0.0};
  double centroid_velocity{0.0};  ///< raw (unscaled) velocity centroid
  double mean_radius{0.0};
  double radius_spread{0.0};   ///< standard deviation of radii about the centroid
  double closure_score{0.0};   ///< radius_spread / mean_radius (0 for a circle)
  double min_radius{0.0};
  double max_radius{0.0};
  std::size_t count{0};
};

OrbitMetrics orbit_metrics(const ReturnMapSeries& series);

/// Scaled distance between a stroboscopic sample and a reference point,
/// using the same velocity weighting as orbit_metrics.
double orbit_distance(const ReturnMapSeries& series, std::size_t index, double ref_displacement,
                      double ref_velocity);

}  // namespace cablewave

#endif
