#ifndef CABLEWAVE_DIAGNOSTICS_HPP
#define CABLEWAVE_DIAGNOSTICS_HPP

#include "cablewave/simulator.hpp"
#include "cablewave/traveling_wave.hpp"

namespace cablewave {

/// Speed of the leading disturbance: linear fit of the first times each probe
/// exceeds `threshold` in magnitude, over probe positions.  This tracks the
/// causal front, which travels no faster than the cable's base speed; the
/// crest pattern behind it moves at the (faster) phase speed, measured by
/// measure_phase_speed.  Requires at least two probes that both trigger.
double measure_front_speed(const RunRecord& record, double threshold);

/// Phase speed of the settled pattern between two probes: mean lag between
/// matching upward zero crossings of the two probe series after
/// `window_start`, divided into the probe separation.  The separation must be
/// below half a spatial period so crossing pairs match unambiguously.
double measure_phase_speed(const RunRecord& record, std::size_t probe_a, std::size_t probe_b,
                           double window_start);

struct SettledProfileError {
  double linf_relative{0.0};  ///< max |w_num - w_ref| / max |w_ref| over the window
  double phase_shift{0.0};    ///< reduced-coordinate shift that aligned the profiles
};

/// Compares a snapshot against the analytic wave over [x_lo, x_hi] after
/// optimizing a single rigid phase shift (coarse scan plus local refinement).
SettledProfileError settled_profile_error(const Snapshot& snapshot,
                                          const std::vector<double>& grid,
                                          const TravelingWave& wave, double x_lo, double x_hi);

/// Minimum and maximum of a snapshot over [x_lo, x_hi].
std::pair<double, double> window_extrema(const Snapshot& snapshot,
                                         const std::vector<double>& grid, double x_lo,
                                         double x_hi);

/// Beat (amplitude-modulation) angular frequency of a probe series: per-period
/// peak amplitudes are collected from `t_start` on, and the mean spacing of
/// their mean-level upcrossings gives the modulation period.  Throws
/// TooFewSamplesError when fewer than two full modulation cycles are visible.
double envelope_beat_frequency(const ProbeSeries& probe, double tau, double t_start);

/// Times of upward zero crossings of (times, values) after window_start,
/// linearly interpolated.
std::vector<double> upcrossing_times(const std::vector<double>& times,
                                     const std::vector<double>& values, double window_start,
                                     double level = 0.0);

}  // namespace cablewave

#endif
