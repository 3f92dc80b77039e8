#include "cablewave/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cablewave/errors.hpp"

namespace cablewave {

std::vector<double> upcrossing_times(const std::vector<double>& times,
                                     const std::vector<double>& values, double window_start,
                                     double level) {
  std::vector<double> crossings;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i - 1] <= level && values[i] > level) {
      const double span = values[i] - values[i - 1];
      const double fraction = span != 0.0 ? (level - values[i - 1]) / span : 0.0;
      const double t = times[i - 1] + fraction * (times[i] - times[i - 1]);
      if (t >= window_start) {
        crossings.push_back(t);
      }
    }
  }
  return crossings;
}

double measure_front_speed(const RunRecord& record, double threshold) {
  if (!(threshold > 0.0)) {
    throw std::invalid_argument("front speed threshold must be positive");
  }
  std::vector<std::pair<double, double>> arrivals;  // (position, first crossing time)
  for (const ProbeSeries& probe : record.probes) {
    for (std::size_t i = 1; i < probe.displacement.size(); ++i) {
      const double before = std::abs(probe.displacement[i - 1]);
      const double here = std::abs(probe.displacement[i]);
      if (before <= threshold && here > threshold) {
        const double span = here - before;
        const double fraction = span != 0.0 ? (threshold - before) / span : 0.0;
        arrivals.emplace_back(probe.position,
                              probe.times[i - 1] + fraction * (probe.times[i] - probe.times[i - 1]));
        break;
      }
    }
  }
  if (arrivals.size() < 2) {
    throw TooFewSamplesError("front speed needs at least two probes that cross the threshold, got " +
                             std::to_string(arrivals.size()));
  }

  double mean_x = 0.0;
  double mean_t = 0.0;
  for (const auto& [x, t] : arrivals) {
    mean_x += x;
    mean_t += t;
  }
  mean_x /= static_cast<double>(arrivals.size());
  mean_t /= static_cast<double>(arrivals.size());
  double cov_xt = 0.0;
  double var_x = 0.0;
  for (const auto& [x, t] : arrivals) {
    cov_xt += (x - mean_x) * (t - mean_t);
    var_x += (x - mean_x) * (x - mean_x);
  }
  if (!(var_x > 0.0) || !(cov_xt > 0.0)) {
    throw std::runtime_error("front arrival times do not increase with distance");
  }
  return var_x / cov_xt;  // slope of t(x) inverted
}

double measure_phase_speed(const RunRecord& record, std::size_t probe_a, std::size_t probe_b,
                           double window_start) {
  if (probe_a >= record.probes.size() || probe_b >= record.probes.size() ||
      probe_a == probe_b) {
    throw std::invalid_argument("measure_phase_speed needs two distinct valid probe indices");
  }
  const ProbeSeries* near = &record.probes[probe_a];
  const ProbeSeries* far = &record.probes[probe_b];
  if (near->position > far->position) {
    std::swap(near, far);
  }
  const double separation = far->position - near->position;
  if (!(separation > 0.0)) {
    throw std::invalid_argument("measure_phase_speed probes must sit at distinct positions");
  }

  const std::vector<double> near_times =
      upcrossing_times(near->times, near->displacement, window_start);
  const std::vector<double> far_times =
      upcrossing_times(far->times, far->displacement, window_start);
  if (near_times.size() < 3 || far_times.size() < 3) {
    throw TooFewSamplesError("measure_phase_speed needs at least three upcrossings per probe");
  }

  double lag_sum = 0.0;
  std::size_t pairs = 0;
  for (const double t : near_times) {
    const auto partner = std::upper_bound(far_times.begin(), far_times.end(), t);
    if (partner != far_times.end()) {
      lag_sum += *partner - t;
      pairs += 1;
    }
  }
  if (pairs < 3) {
    throw TooFewSamplesError("measure_phase_speed matched fewer than three crossing pairs");
  }
  const double mean_lag = lag_sum / static_cast<double>(pairs);
  if (!(mean_lag > 0.0)) {
    throw std::runtime_error("matched crossings produced a nonpositive mean lag");
  }
  return separation / mean_lag;
}

SettledProfileError settled_profile_error(const Snapshot& snapshot,
                                          const std::vector<double>& grid,
                                          const TravelingWave& wave, double x_lo, double x_hi) {
  std::vector<std::size_t> window;
  for (std::size_t j = 0; j < grid.size() && j < snapshot.displacement.size(); ++j) {
    if (grid[j] >= x_lo && grid[j] <= x_hi) {
      window.push_back(j);
    }
  }
  if (window.size() < 8) {
    throw TooFewSamplesError("settled_profile_error window contains fewer than 8 grid points");
  }

  const double dip_ratio = std::sqrt(wave.substrate.k2 / wave.substrate.k1);
  const double reference_peak = std::abs(wave.amplitude) * std::max(1.0, dip_ratio);
  if (!(reference_peak > 0.0)) {
    throw std::invalid_argument("settled_profile_error needs a wave with nonzero amplitude");
  }
  const double speed = wave.phase_speed * wave.base_speed;

  const auto misfit = [&](double phase_shift) {
    double worst = 0.0;
    for (const std::size_t j : window) {
      const double xi = (grid[j] - speed * snapshot.time) / wave.wavelength + phase_shift;
      const double gap = std::abs(snapshot.displacement[j] - profile(wave, xi));
      worst = std::max(worst, gap);
    }
    return worst / reference_peak;
  };

  // Coarse scan over one reduced period, then golden-section refinement.
  constexpr int coarse_points = 256;
  double best_shift = 0.0;
  double best_error = std::numeric_limits<double>::infinity();
  for (int i = 0; i < coarse_points; ++i) {
    const double shift = static_cast<double>(i) / coarse_points;
    const double error = misfit(shift);
    if (error < best_error) {
      best_error = error;
      best_shift = shift;
    }
  }
  double lo = best_shift - 1.0 / coarse_points;
  double hi = best_shift + 1.0 / coarse_points;
  constexpr double golden = 0.6180339887498949;
  double x1 = hi - golden * (hi - lo);
  double x2 = lo + golden * (hi - lo);
  double f1 = misfit(x1);
  double f2 = misfit(x2);
  for (int iter = 0; iter < 60; ++iter) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - golden * (hi - lo);
      f1 = misfit(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + golden * (hi - lo);
      f2 = misfit(x2);
    }
  }
  const double refined_shift = 0.5 * (lo + hi);
  const double refined_error = misfit(refined_shift);
  if (refined_error < best_error) {
    best_error = refined_error;
    best_shift = refined_shift;
  }

  SettledProfileError result;
  result.linf_relative = best_error;
  result.phase_shift = best_shift - std::floor(best_shift + 0.5);  // wrap to [-1/2, 1/2)
  return result;
}

std::pair<double, double> window_extrema(const Snapshot& snapshot,
                                         const std::vector<double>& grid, double x_lo,
                                         double x_hi) {
  double lowest = std::numeric_limits<double>::infinity();
  double highest = -std::numeric_limits<double>::infinity();
  std::size_t seen = 0;
  for (std::size_t j = 0; j < grid.size() && j < snapshot.displacement.size(); ++j) {
    if (grid[j] >= x_lo && grid[j] <= x_hi) {
      lowest = std::min(lowest, snapshot.displacement[j]);
      highest = std::max(highest, snapshot.displacement[j]);
      seen += 1;
    }
  }
  if (seen == 0) {
    throw TooFewSamplesError("window_extrema found no grid points in the window");
  }
  return {lowest, highest};
}

double envelope_beat_frequency(const ProbeSeries& probe, double tau, double t_start) {
  if (!(tau > 0.0)) {
    throw std::invalid_argument("envelope_beat_frequency needs a positive period tau");
  }
  std::vector<double> peak_times;
  std::vector<double> peaks;
  const double t_last = probe.times.empty() ? t_start : probe.times.back();
  for (double window = t_start; window + tau <= t_last + 1e-12; window += tau) {
    double peak = 0.0;
    bool seen = false;
    for (std::size_t i = 0; i < probe.times.size(); ++i) {
      if (probe.times[i] >= window && probe.times[i] < window + tau) {
        peak = std::max(peak, std::abs(probe.displacement[i]));
        seen = true;
      }
    }
    if (seen) {
      peak_times.push_back(window + 0.5 * tau);
      peaks.push_back(peak);
    }
  }
  if (peaks.size() < 8) {
    throw TooFewSamplesError("envelope_beat_frequency needs at least 8 per-period peaks, got " +
                             std::to_string(peaks.size()));
  }

  double mean_peak = 0.0;
  for (const double p : peaks) {
    mean_peak += p;
  }
  mean_peak /= static_cast<double>(peaks.size());
  std::vector<double> centered(peaks.size());
  for (std::size_t i = 0; i < peaks.size(); ++i) {
    centered[i] = peaks[i] - mean_peak;
  }

  const std::vector<double> crossings =
      upcrossing_times(peak_times, centered, peak_times.front());
  if (crossings.size() < 3) {
    throw TooFewSamplesError(
        "envelope_beat_frequency sees fewer than two full modulation cycles");
  }
  const double period =
      (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
  return 2.0 * std::numbers::pi / period;
}

}  // namespace cablewave
