#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "cablewave/errors.hpp"
#include "cablewave/loaded_wave.hpp"
#include "doctest.h"

using namespace cablewave;

namespace {

constexpr double pi = std::numbers::pi;

// Reference configuration used throughout: k1=1, k2=2, p=-0.01 at
// alpha = 1.2 * alpha_critical.
const Substrate ref_substrate{1.0, 2.0};
constexpr double ref_load = -0.01;
constexpr double ref_alpha = 0.7029437251522859;

// Independent half-angle form of the dispersion relation: a root satisfies
// sqrt(k2/k1) * tan(a*alpha/2) + tan(b*(1-alpha)/2) = 0 with b = a*sqrt(k2/k1).
double half_angle_form(const Substrate& s, double alpha, double a) {
  const double ratio = std::sqrt(s.k2 / s.k1);
  const double b = a * ratio;
  return ratio * std::tan(0.5 * a * alpha) + std::tan(0.5 * b * (1.0 - alpha));
}

// RK4 integration of the traveling-wave balance (c^2-1) W'' + k(W) W = p
// from the solver's initial data; an oracle for the assembled profile.
struct TrajectoryPoint {
  double w;
  double slope;
};

TrajectoryPoint integrate_profile(const LoadedWave& wave, double xi_end, double step,
                                  const std::function<void(double, double)>& observe) {
  const double factor = wave.phase_speed * wave.phase_speed - 1.0;
  const auto accel = [&](double w) {
    return (wave.load - wave.substrate.stiffness(w) * w) / factor;
  };
  double w = loaded_profile(wave, 0.0);
  double s = loaded_profile_derivative(wave, 0.0);
  double xi = 0.0;
  const long n = std::lround(xi_end / step);
  for (long i = 0; i < n; ++i) {
    observe(xi, w);
    const double k1w = s;
    const double k1s = accel(w);
    const double k2w = s + 0.5 * step * k1s;
    const double k2s = accel(w + 0.5 * step * k1w);
    const double k3w = s + 0.5 * step * k2s;
    const double k3s = accel(w + 0.5 * step * k2w);
    const double k4w = s + step * k3s;
    const double k4s = accel(w + step * k3w);
    w += step / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
    s += step / 6.0 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s);
    xi += step;
  }
  return {w, s};
}

}  // namespace

TEST_SUITE_BEGIN("loaded_wave");

TEST_CASE("critical compression fraction") {
  CHECK(alpha_critical(Substrate{1.0, 2.0}) ==
        doctest::Approx(0.5857864376269049).epsilon(1e-15));
  CHECK(alpha_critical(Substrate{30.0, 1.0}) ==
        doctest::Approx(0.15438708879488487).epsilon(1e-15));
  CHECK(alpha_critical(Substrate{1.0, 10.0}) ==
        doctest::Approx(0.7597469266479579).epsilon(1e-15));
}

TEST_CASE("dispersion scan finds the reference roots") {
  const DispersionScan scan = scan_roots(ref_substrate, ref_alpha);
  REQUIRE(scan.roots.size() >= 6);
  const std::vector<double> expected = {5.8193953043895213,  10.8826423758759866,
                                        16.9905426403903432, 22.3865468900306814,
                                        27.7576176710203451, 33.8747846437637087};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(scan.roots[i] == doctest::Approx(expected[i]).epsilon(1e-12));
  }
  // Roots strictly increasing.
  for (std::size_t i = 0; i + 1 < scan.roots.size(); ++i) {
    CHECK(scan.roots[i] < scan.roots[i + 1]);
  }
}

TEST_CASE("scan roots satisfy both residual forms") {
  const DispersionScan scan = scan_roots(ref_substrate, ref_alpha);
  for (const double root : scan.roots) {
    CHECK(std::abs(dispersion_residual(ref_substrate, ref_alpha, root)) < 1e-10);
    // Independent half-angle form: bracket the same root and bisect it.
    double lo = root - 1e-3;
    double hi = root + 1e-3;
    REQUIRE(half_angle_form(ref_substrate, ref_alpha, lo) *
                half_angle_form(ref_substrate, ref_alpha, hi) <
            0.0);
    for (int iter = 0; iter < 100; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (half_angle_form(ref_substrate, ref_alpha, lo) *
              half_angle_form(ref_substrate, ref_alpha, mid) <=
          0.0) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    CHECK(root == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-9));
  }
}

TEST_CASE("scan singularities sit on the analytic pole families") {
  const Substrate substrate{1.0, 2.0};
  const double alpha = 0.7;
  const double a_max = 12.0 * pi;
  const DispersionScan scan = scan_roots(substrate, alpha, a_max);
  const double ratio = std::sqrt(substrate.k2 / substrate.k1);
  CHECK_FALSE(scan.singularities.empty());
  for (const double pole : scan.singularities) {
    double best = 1e9;
    for (int m = 0; m < 200; ++m) {
      const double family1 = (2.0 * m + 1.0) * pi / alpha;
      const double family2 = 2.0 * (m + 1.0) * pi / (ratio * (1.0 - alpha));
      best = std::min({best, std::abs(pole - family1), std::abs(pole - family2)});
    }
    CHECK(best < 1e-9);
  }
  // Poles are also where the residual refuses to evaluate.
  CHECK_THROWS_AS(dispersion_residual(substrate, alpha, scan.singularities.front()),
                  SingularPointError);
}

TEST_CASE("reference loaded wave matches the frozen solution") {
  const LoadedWave wave = solve_loaded_wave(ref_substrate, ref_load, ref_alpha);
  CHECK(wave.wavenumber == doctest::Approx(5.8193953043895213).epsilon(1e-13));
  CHECK(wave.tension_wavenumber() == doctest::Approx(8.2298677642779667).epsilon(1e-13));
  CHECK(wave.phase_speed == doctest::Approx(1.0146569355508386).epsilon(1e-14));
  CHECK(wave.compression.sin_coeff == doctest::Approx(-0.019466138879032344).epsilon(1e-12));
  CHECK(wave.compression.cos_coeff == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(wave.compression.offset == doctest::Approx(-0.01).epsilon(1e-15));
  CHECK(wave.tension.sin_coeff == doctest::Approx(0.013764638804882869).epsilon(1e-12));
  CHECK(wave.tension.cos_coeff == doctest::Approx(0.005).epsilon(1e-12));
  CHECK(wave.tension.offset == doctest::Approx(-0.005).epsilon(1e-15));

  const LoadedPeriodFrequency pf = period_frequency(wave);
  CHECK(pf.period == doctest::Approx(0.9855547870050465).epsilon(1e-14));
  CHECK(pf.period * pf.angular_frequency == doctest::Approx(2.0 * pi).epsilon(1e-14));
}

TEST_CASE("coefficient identity c1^2 + c2^2 = (p/k1)^2 sec^2(a alpha / 2)") {
  for (const double alpha : {0.65, ref_alpha, 0.80, 0.45, 0.30}) {
    const double load = alpha > alpha_critical(ref_substrate) ? -0.01 : 0.01;
    const LoadedWave wave = solve_loaded_wave(ref_substrate, load, alpha);
    const double c1 = wave.compression.sin_coeff;
    const double c2 = wave.compression.cos_coeff;
    const double half = 0.5 * wave.wavenumber * wave.alpha;
    const double sec = 1.0 / std::cos(half);
    const double expected = (load / ref_substrate.k1) * (load / ref_substrate.k1) * sec * sec;
    CHECK(c1 * c1 + c2 * c2 == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("profile hits the junctions and stays sign-partitioned") {
  const LoadedWave wave = solve_loaded_wave(ref_substrate, ref_load, ref_alpha);
  CHECK(std::abs(loaded_profile(wave, 0.0)) < 1e-15);
  CHECK(std::abs(loaded_profile(wave, wave.alpha)) < 1e-15);
  CHECK(std::abs(loaded_profile(wave, 1.0)) < 1e-15);

  const double eps = 1e-9;
  const double scale = std::abs(loaded_profile_derivative(wave, 0.0)) + 1.0;
  CHECK(std::abs(loaded_profile_derivative(wave, wave.alpha - eps) -
                 loaded_profile_derivative(wave, wave.alpha + eps)) /
            scale <
        1e-5);
  CHECK(std::abs(loaded_profile_derivative(wave, 1.0 - eps) -
                 loaded_profile_derivative(wave, eps)) /
            scale <
        1e-5);

  int violations = 0;
  for (int i = 0; i <= 10000; ++i) {
    const double xi = static_cast<double>(i) / 10000.0;
    const double w = loaded_profile(wave, xi);
    const bool bad = xi < wave.alpha ? w > 1e-14 : w < -1e-14;
    violations += bad ? 1 : 0;
  }
  CHECK(violations == 0);
}

TEST_CASE("profile agrees with an RK4 shoot of the balance law") {
  const LoadedWave wave = solve_loaded_wave(ref_substrate, ref_load, ref_alpha);
  double worst = 0.0;
  const TrajectoryPoint end =
      integrate_profile(wave, 1.0, 1e-5, [&](double xi, double w) {
        worst = std::max(worst, std::abs(w - loaded_profile(wave, xi)));
      });
  CHECK(worst < 1e-9);
  // Periodicity: one full period returns to the seam values.
  CHECK(std::abs(end.w - loaded_profile(wave, 0.0)) < 1e-9);
  CHECK(std::abs(end.slope - loaded_profile_derivative(wave, 0.0)) < 1e-7);
}

TEST_CASE("closed-form extrema match dense sampling") {
  const LoadedWave wave = solve_loaded_wave(ref_substrate, ref_load, ref_alpha);
  const LoadedExtrema bounds = extrema(wave);
  CHECK(bounds.w_min == doctest::Approx(-0.031884482238741098).epsilon(1e-13));
  CHECK(bounds.w_max == doctest::Approx(0.009644633195436726).epsilon(1e-13));
  CHECK(bounds.w_min_normalized == doctest::Approx(3.1884482238741098).epsilon(1e-13));
  CHECK(bounds.w_max_normalized == doctest::Approx(-1.9289266390873452).epsilon(1e-13));

  double sampled_min = 0.0;
  double sampled_max = 0.0;
  for (int i = 0; i <= 200000; ++i) {
    const double w = loaded_profile(wave, static_cast<double>(i) / 200000.0);
    sampled_min = std::min(sampled_min, w);
    sampled_max = std::max(sampled_max, w);
  }
  CHECK(sampled_min == doctest::Approx(bounds.w_min).epsilon(1e-8));
  CHECK(sampled_max == doctest::Approx(bounds.w_max).epsilon(1e-8));
}

TEST_CASE("higher branches solve and translate in space-time") {
  // The admissible load sign flips with the branch: root 1 puts the
  // compression phase a*alpha into a quadrant with positive sine, so the
  // load must be positive there.
  CHECK_THROWS_AS(solve_loaded_wave(ref_substrate, ref_load, ref_alpha, 1),
                  InadmissibleLoadError);
  const LoadedWave wave = solve_loaded_wave(ref_substrate, -ref_load, ref_alpha, 1);
  CHECK(wave.branch_index == 1);
  CHECK(wave.wavenumber == doctest::Approx(10.8826423758759866).epsilon(1e-12));

  const double speed = wave.phase_speed * wave.base_speed;
  for (double t = 0.0; t < 1.5; t += 0.23) {
    for (double x = 0.0; x < 2.0; x += 0.41) {
      CHECK(evaluate_spacetime(wave, x, t) ==
            doctest::Approx(loaded_profile(wave, (x - speed * t) / wave.wavelength))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("admissibility ties the load sign to the side of critical") {
  const double critical = alpha_critical(ref_substrate);
  // Above critical the compression phase exceeds pi: requires p < 0.
  CHECK_THROWS_AS(solve_loaded_wave(ref_substrate, +0.01, 1.2 * critical),
                  InadmissibleLoadError);
  CHECK_NOTHROW(solve_loaded_wave(ref_substrate, -0.01, 1.2 * critical));
  // Below critical: requires p > 0.
  CHECK_THROWS_AS(solve_loaded_wave(ref_substrate, -0.01, 0.8 * critical),
                  InadmissibleLoadError);
  CHECK_NOTHROW(solve_loaded_wave(ref_substrate, +0.01, 0.8 * critical));
}

TEST_CASE("critical window and missing roots are rejected") {
  const double critical = alpha_critical(ref_substrate);
  CHECK_THROWS_AS(solve_loaded_wave(ref_substrate, -0.01, critical), CriticalAlphaError);
  CHECK_THROWS_AS(solve_loaded_wave(ref_substrate, -0.01, critical + 0.5e-6),
                  CriticalAlphaError);
  CHECK_THROWS_AS(solve_loaded_wave(ref_substrate, -0.01, ref_alpha, 99), NoRootError);
  CHECK_THROWS_AS(solve_loaded_wave(Substrate{0.0, 1.0}, -0.01, 0.5),
                  DegenerateSubstrateError);
}

TEST_CASE("zero waves exist strictly inside the single-branch window") {
  const Substrate substrate{1.0, 2.0};
  // p < 0 rides the compression branch: threshold |p| / k1 = 0.01.
  CHECK(zero_wave_exists(substrate, -0.01, 0.009));
  CHECK_FALSE(zero_wave_exists(substrate, -0.01, 0.01));
  CHECK_FALSE(zero_wave_exists(substrate, -0.01, 0.011));
  // p > 0 rides the tension branch: threshold p / k2 = 0.005.
  CHECK(zero_wave_exists(substrate, 0.01, 0.0049));
  CHECK_FALSE(zero_wave_exists(substrate, 0.01, 0.0051));
}

TEST_SUITE_END();
