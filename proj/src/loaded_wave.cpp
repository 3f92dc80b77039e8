#include "cablewave/loaded_wave.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cablewave {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double singular_guard = 1e-9;  ///< pole proximity below which the residual is refused
constexpr double bisection_width = 1e-13;

double wrap_unit(double xi) {
  double wrapped = xi - std::floor(xi);
  if (wrapped >= 1.0) wrapped = 0.0;
  return wrapped;
}

}  // namespace

double HarmonicBranch::value(double xi) const {
  const double phase = wavenumber * (xi - start);
  return sin_coeff * std::sin(phase) + cos_coeff * std::cos(phase) + offset;
}

double HarmonicBranch::derivative(double xi) const {
  const double phase = wavenumber * (xi - start);
  return wavenumber * (sin_coeff * std::cos(phase) - cos_coeff * std::sin(phase));
}

double alpha_critical(const Substrate& substrate) {
  require_nondegenerate(substrate);
  const double s1 = std::sqrt(substrate.k1);
  const double s2 = std::sqrt(substrate.k2);
  return s2 / (s1 + s2);
}

double dispersion_residual(const Substrate& substrate, double alpha, double a) {
  require_nondegenerate(substrate);
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie strictly inside (0, 1)");
  }
  if (!(a > 0.0)) {
    throw std::invalid_argument("wavenumber a must be positive");
  }
  const double b = a * std::sqrt(substrate.k2 / substrate.k1);
  const double x = a * alpha;
  const double y = b * (1.0 - alpha);
  const double denom_x = std::cos(x) + 1.0;
  const double denom_y = std::cos(y) - 1.0;
  if (std::abs(denom_x) < singular_guard || std::abs(denom_y) < singular_guard) {
    throw SingularPointError("singular point: dispersion denominator vanishes near a = " +
                             std::to_string(a));
  }
  return std::sqrt(substrate.k1 / substrate.k2) -
         (std::sin(x) / denom_x) * (std::sin(y) / denom_y);
}

std::vector<double> dispersion_singularities(const Substrate& substrate, double alpha,
                                             double a_max) {
  require_nondegenerate(substrate);
  std::vector<double> poles;
  // cos(a*alpha) = -1  =>  a = (2m+1) pi / alpha
  for (int m = 0;; ++m) {
    const double a = (2.0 * m + 1.0) * pi / alpha;
    if (a > a_max) break;
    poles.push_back(a);
  }
  // cos(b*(1-alpha)) = +1 (b > 0)  =>  a = 2 m pi / (sqrt(k2/k1) * (1-alpha))
  const double ratio = std::sqrt(substrate.k2 / substrate.k1);
  for (int m = 1;; ++m) {
    const double a = 2.0 * m * pi / (ratio * (1.0 - alpha));
    if (a > a_max) break;
    poles.push_back(a);
  }
  std::sort(poles.begin(), poles.end());
  std::vector<double> merged;
  for (double p : poles) {
    if (merged.empty() || p - merged.back() > 1e-12 * std::max(1.0, p)) {
      merged.push_back(p);
    }
  }
  return merged;
}

DispersionScan scan_roots(const Substrate& substrate, double alpha, double a_max, int grid) {
  require_nondegenerate(substrate);
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie strictly inside (0, 1)");
  }
  if (a_max <= 0.0) a_max = default_scan_limit_factor * pi;
  if (grid < 16) {
    throw std::invalid_argument("grid must provide at least 16 samples");
  }

  DispersionScan scan;
  scan.alpha = alpha;
  scan.a_max = a_max;
  scan.grid = grid;
  scan.singularities = dispersion_singularities(substrate, alpha, a_max);

  // Pole-free subintervals of (0, a_max].
  std::vector<std::pair<double, double>> spans;
  double left = 0.0;
  for (double s : scan.singularities) {
    spans.emplace_back(left, s);
    left = s;
  }
  spans.emplace_back(left, a_max);

  const auto residual_at = [&](double a) { return dispersion_residual(substrate, alpha, a); };

  for (const auto& [lo, hi] : spans) {
    if (hi - lo <= 0.0) continue;
    const int samples = std::max(8, static_cast<int>(std::ceil(grid * (hi - lo) / a_max)));
    double prev_a = 0.0;
    double prev_value = 0.0;
    bool have_prev = false;
    for (int i = 0; i <= samples; ++i) {
      const double a = lo + (hi - lo) * (i + 0.5) / (samples + 1.0);
      double value;
      try {
        value = residual_at(a);
      } catch (const SingularPointError&) {
        continue;  // sample fell into a pole guard band
      }
      if (!std::isfinite(value)) continue;
      if (have_prev && std::signbit(value) != std::signbit(prev_value)) {
        double a_lo = prev_a;
        double a_hi = a;
        double f_lo = prev_value;
        for (int iter = 0; iter < 200 && a_hi - a_lo > bisection_width; ++iter) {
          const double mid = 0.5 * (a_lo + a_hi);
          if (mid <= a_lo || mid >= a_hi) break;  // double precision exhausted
          double f_mid;
          try {
            f_mid = residual_at(mid);
          } catch (const SingularPointError&) {
            break;
          }
          if (std::signbit(f_mid) == std::signbit(f_lo)) {
            a_lo = mid;
            f_lo = f_mid;
          } else {
            a_hi = mid;
          }
        }
        scan.roots.push_back(0.5 * (a_lo + a_hi));
      }
      prev_a = a;
      prev_value = value;
      have_prev = true;
    }
  }
  std::sort(scan.roots.begin(), scan.roots.end());
  return scan;
}

double scan_root(const DispersionScan& scan, int branch_index) {
  if (branch_index < 0) {
    throw std::invalid_argument("branch index must be non-negative");
  }
  if (static_cast<std::size_t>(branch_index) >= scan.roots.size()) {
    throw NoRootError("no root in range: branch " + std::to_string(branch_index) + " requested, " +
                      std::to_string(scan.roots.size()) + " root(s) found below a_max = " +
                      std::to_string(scan.a_max));
  }
  return scan.roots[static_cast<std::size_t>(branch_index)];
}

LoadedWave solve_loaded_wave(const Substrate& substrate, double load, double alpha,
                             int branch_index, double wavelength, double base_speed, double a_max,
                             int grid) {
  require_nondegenerate(substrate);
  if (load == 0.0) {
    throw std::invalid_argument("load must be nonzero for a loaded wave");
  }
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie strictly inside (0, 1)");
  }
  if (!(wavelength > 0.0) || !(base_speed > 0.0)) {
    throw std::invalid_argument("wavelength and base_speed must be positive");
  }
  const double a_cr = alpha_critical(substrate);
  if (std::abs(alpha - a_cr) <= critical_alpha_window) {
    throw CriticalAlphaError("critical alpha: waves degenerate at alpha = " +
                             std::to_string(a_cr) + " (requested " + std::to_string(alpha) + ")");
  }

  const DispersionScan scan = scan_roots(substrate, alpha, a_max, grid);
  const double a = scan_root(scan, branch_index);
  const double b = a * std::sqrt(substrate.k2 / substrate.k1);
  const double x = a * alpha;
  const double y = b * (1.0 - alpha);

  const double c1 = (load / substrate.k1) * (std::cos(x) - 1.0) / std::sin(x);
  const double c2 = -load / substrate.k1;
  const double c3 = (load / substrate.k2) * (std::cos(y) - 1.0) / std::sin(y);
  const double c4 = -load / substrate.k2;

  // Slope-sign admissibility: the compression branch must leave w = 0 downward.
  if (c1 > 0.0) {
    throw InadmissibleLoadError(
        "inadmissible load sign: for this alpha and branch the compression span " +
        std::string(std::sin(x) > 0.0 ? "requires a positive load"
                                      : "requires a negative load") +
        " (got load = " + std::to_string(load) + ")");
  }

  LoadedWave wave;
  wave.substrate = substrate;
  wave.load = load;
  wave.alpha = alpha;
  wave.wavenumber = a;
  wave.phase_speed = std::sqrt(1.0 + substrate.k1 / (a * a));
  wave.branch_index = branch_index;
  wave.compression = HarmonicBranch{a, c1, c2, load / substrate.k1, 0.0};
  wave.tension = HarmonicBranch{b, c3, c4, load / substrate.k2, alpha};
  wave.wavelength = wavelength;
  wave.base_speed = base_speed;
  return wave;
}

double loaded_profile(const LoadedWave& wave, double xi) {
  const double wrapped = wrap_unit(xi);
  if (wrapped <= wave.alpha) return wave.compression.value(wrapped);
  return wave.tension.value(wrapped);
}

double loaded_profile_derivative(const LoadedWave& wave, double xi) {
  const double wrapped = wrap_unit(xi);
  if (wrapped <= wave.alpha) return wave.compression.derivative(wrapped);
  return wave.tension.derivative(wrapped);
}

double evaluate_spacetime(const LoadedWave& wave, double x, double t) {
  const double xi = (x - wave.phase_speed * wave.base_speed * t) / wave.wavelength;
  return loaded_profile(wave, xi);
}

LoadedPeriodFrequency period_frequency(const LoadedWave& wave) {
  LoadedPeriodFrequency pf;
  pf.period = wave.wavelength / (wave.phase_speed * wave.base_speed);
  pf.angular_frequency = 2.0 * pi / pf.period;
  return pf;
}

LoadedExtrema extrema(const LoadedWave& wave) {
  const double swing1 = std::hypot(wave.compression.sin_coeff, wave.compression.cos_coeff);
  const double swing2 = std::hypot(wave.tension.sin_coeff, wave.tension.cos_coeff);
  LoadedExtrema result;
  result.w_min = wave.compression.offset - swing1;
  result.w_max = wave.tension.offset + swing2;
  result.w_min_normalized = result.w_min * wave.substrate.k1 / wave.load;
  result.w_max_normalized = result.w_max * wave.substrate.k2 / wave.load;
  return result;
}

bool zero_wave_exists(const Substrate& substrate, double load, double amplitude) {
  require_nondegenerate(substrate);
  if (load == 0.0) {
    throw std::invalid_argument("load must be nonzero to select a zero-wave branch");
  }
  if (amplitude < 0.0) {
    throw std::invalid_argument("amplitude must be non-negative");
  }
  const double k = load < 0.0 ? substrate.k1 : substrate.k2;
  return amplitude < std::abs(load) / k;
}

}  // namespace cablewave
