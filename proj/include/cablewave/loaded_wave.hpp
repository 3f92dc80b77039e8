#ifndef CABLEWAVE_LOADED_WAVE_HPP
#define CABLEWAVE_LOADED_WAVE_HPP

#include <vector>

#include "cablewave/substrate.hpp"

namespace cablewave {

/// One harmonic piece of a loaded wave profile:
///   w(xi) = sin_coeff * sin(wavenumber * (xi - start))
///         + cos_coeff * cos(wavenumber * (xi - start)) + offset.
struct HarmonicBranch {
  double wavenumber{0.0};
  double sin_coeff{0.0};
  double cos_coeff{0.0};
  double offset{0.0};  ///< static deflection load / stiffness of this branch
  double start{0.0};   ///< xi at which the branch's phase is zero

  [[nodiscard]] double value(double xi) const;
  [[nodiscard]] double derivative(double xi) const;
};

/// Periodic traveling wave under a uniform distributed load.  Unlike the
/// unloaded family, the compression fraction alpha is a free parameter and the
/// amplitude is fixed by the load; the wavenumber of the compression branch is
/// a root of the dispersion relation for that alpha.
struct LoadedWave {
  Substrate substrate;
  double load{0.0};         ///< uniform load p (nondimensional)
  double alpha{0.0};        ///< compression fraction, in (0, 1), != critical value
  double wavenumber{0.0};   ///< compression-branch wavenumber (dispersion root 'a')
  double phase_speed{0.0};  ///< c = sqrt(1 + k1 / a^2)
  int branch_index{0};      ///< which dispersion root (0 = lowest)
  HarmonicBranch compression;  ///< valid on [0, alpha]
  HarmonicBranch tension;      ///< valid on [alpha, 1]
  double wavelength{1.0};
  double base_speed{1.0};

  [[nodiscard]] double tension_wavenumber() const { return tension.wavenumber; }
};

/// Result of sweeping the dispersion relation in the compression wavenumber.
struct DispersionScan {
  double alpha{0.0};
  double a_max{0.0};
  int grid{0};
  std::vector<double> roots;          ///< strictly increasing; may be empty
  std::vector<double> singularities;  ///< strictly increasing pole locations
};

/// Compression fraction at which loaded waves degenerate; equals the
/// no-load alpha: sqrt(k2) / (sqrt(k1) + sqrt(k2)).
double alpha_critical(const Substrate& substrate);

/// Reduced coordinate span at which waves with `repetitions` sub-waves exist:
/// here only the single-wave critical value is needed, see alpha_critical.
///
/// Dispersion residual (left side minus right side) at compression
/// wavenumber `a`:
///   sqrt(k1/k2) - [sin(a*alpha) / (cos(a*alpha) + 1)]
///               * [sin(b*(1-alpha)) / (cos(b*(1-alpha)) - 1)],
/// with b = a * sqrt(k2/k1).  Throws SingularPointError when either
/// denominator is within 1e-9 of zero.
double dispersion_residual(const Substrate& substrate, double alpha, double a);

/// Pole locations of the dispersion residual below a_max, in increasing order:
/// zeros of cos(a*alpha)+1 and of cos(b*(1-alpha))-1 (excluding a = 0).
std::vector<double> dispersion_singularities(const Substrate& substrate, double alpha,
                                             double a_max);

inline constexpr double default_scan_limit_factor = 12.0;  ///< a_max = factor * pi
inline constexpr int default_scan_grid = 20000;

/// Brackets sign changes of the residual on each pole-free subinterval of
/// (0, a_max) using `grid` samples, then bisects each bracket to 1e-12
/// absolute.  Returns all roots found (possibly none) plus the pole list.
DispersionScan scan_roots(const Substrate& substrate, double alpha,
                          double a_max = -1.0, int grid = default_scan_grid);

/// Selects scan.roots[branch_index]; throws NoRootError when the scan found
/// no root of that index below its a_max.
double scan_root(const DispersionScan& scan, int branch_index);

/// Half-width of the rejection window around alpha_critical.
inline constexpr double critical_alpha_window = 1e-6;

/// Builds the loaded wave for the given load and compression fraction.
///   - CriticalAlphaError when |alpha - alpha_critical| <= 1e-6;
///   - InadmissibleLoadError when sign(load) violates the slope-sign
///     admissibility condition (compression slope coefficient must be <= 0);
///   - NoRootError when the dispersion scan finds no root for branch_index.
LoadedWave solve_loaded_wave(const Substrate& substrate, double load, double alpha,
                             int branch_index = 0, double wavelength = 1.0,
                             double base_speed = 1.0, double a_max = -1.0,
                             int grid = default_scan_grid);

/// Loaded-wave height at reduced coordinate xi (wrapped to [0, 1)).
double loaded_profile(const LoadedWave& wave, double xi);

/// d(loaded_profile)/d(xi).
double loaded_profile_derivative(const LoadedWave& wave, double xi);

/// Field value w(x, t) of the loaded wave translating at c * base_speed.
double evaluate_spacetime(const LoadedWave& wave, double x, double t);

struct LoadedPeriodFrequency {
  double period{0.0};
  double angular_frequency{0.0};
};

/// Temporal period L / (c*v) and angular frequency of the loaded wave.
LoadedPeriodFrequency period_frequency(const LoadedWave& wave);

struct LoadedExtrema {
  double w_min{0.0};             ///< deepest compression value (minimum of w)
  double w_max{0.0};             ///< highest tension value (maximum of w)
  double w_min_normalized{0.0};  ///< (k1 / load) * w_min
  double w_max_normalized{0.0};  ///< (k2 / load) * w_max
};

/// Closed-form extrema of the loaded profile:
///   w_min = load/k1 - sqrt(c1^2 + c2^2),  w_max = load/k2 + sqrt(c3^2 + c4^2),
/// plus the load-independent normalized values used for sweep plots.
LoadedExtrema extrema(const LoadedWave& wave);

/// Whether a "zero wave" (an oscillation that never leaves one stiffness
/// branch) exists for this load and oscillation amplitude: amplitude must be
/// strictly below |load| / k on the branch selected by the sign of the load
/// (k1 for load < 0, k2 for load > 0).  Equality returns false.
bool zero_wave_exists(const Substrate& substrate, double load, double amplitude);

}  // namespace cablewave

#endif
