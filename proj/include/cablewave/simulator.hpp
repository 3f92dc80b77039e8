#ifndef CABLEWAVE_SIMULATOR_HPP
#define CABLEWAVE_SIMULATOR_HPP

#include <optional>
#include <vector>

#include "cablewave/loaded_wave.hpp"
#include "cablewave/substrate.hpp"
#include "cablewave/traveling_wave.hpp"

namespace cablewave {

/// Time signal imposed at the near end (x = 0) of the half-infinite cable.
/// The trace kinds follow an analytic wave passing the boundary; a harmonic
/// term can be superposed on top for perturbation studies.  `offset` is
/// subtracted from the signal and is used internally when a run is performed
/// in a shifted variable.
struct BoundaryDriver {
  enum class Kind { zero, wave_trace, loaded_trace };

  Kind kind{Kind::zero};
  std::optional<TravelingWave> wave;   ///< for Kind::wave_trace
  std::optional<LoadedWave> loaded;    ///< for Kind::loaded_trace
  double trace_scale{1.0};             ///< signed multiplier applied to the trace
  double harmonic_amplitude{0.0};      ///< epsilon of an added epsilon*sin(omega1*t)
  double harmonic_frequency{0.0};      ///< omega1 of the added harmonic
  double offset{0.0};                  ///< subtracted constant (shifted-variable runs)
  double ramp_time{0.0};  ///< >0: scale the whole signal by a C^2 ramp 0 -> 1 over [0, ramp_time]
                          ///< (gentle start, suppresses the turn-on transient)

  [[nodiscard]] double value(double t) const;
  [[nodiscard]] double rate(double t) const;  ///< analytic time derivative
  /// Peak magnitude of the signal, used for blow-up detection scaling.
  [[nodiscard]] double magnitude() const;
};

/// Initial displacement/velocity fields.  `offset` is subtracted from the
/// displacement (shifted-variable runs).
struct InitialCondition {
  enum class Kind {
    zero,
    decaying_sinusoid,  ///< amplitude * sin(wavenumber*x) * exp(-decay*x), at rest
    cosine_bump,        ///< compactly supported cos^2 bump, at rest
    constant,           ///< uniform displacement, at rest
    wave_field          ///< snapshot of an analytic wave at t = 0 (fills the domain)
  };

  Kind kind{Kind::zero};
  double amplitude{0.0};
  double wavenumber{0.0};
  double decay{0.0};
  double center{0.0};
  double halfwidth{0.0};
  double constant_value{0.0};
  std::optional<TravelingWave> wave;  ///< for Kind::wave_field
  double offset{0.0};

  [[nodiscard]] double displacement(double x) const;
  [[nodiscard]] double velocity(double x) const;
  /// Rightmost extent of non-negligible initial data (for the far-boundary
  /// precondition); wave_field reports infinity since it fills the domain.
  [[nodiscard]] double support_right() const;
  [[nodiscard]] double magnitude() const;
};

/// Explicit finite-difference setup for the half-infinite cable problem.
/// Substrate stiffnesses and the load are nondimensional; they are scaled by
/// (base_speed / wavelength)^2 internally to act on physical coordinates.
struct SimConfig {
  Substrate substrate;
  double base_speed{1.0};   ///< v
  double wavelength{1.0};   ///< L (length scale of the nondimensionalization)
  double load{0.0};         ///< uniform load p (nondimensional)
  double domain_length{0.0};  ///< 0 -> derived from t_end with a 10% margin
  double dx{0.0};             ///< 0 -> wavelength / 200
  double dt{0.0};             ///< 0 -> 0.9 * explicit stability bound
  double t_end{0.0};
  BoundaryDriver boundary;
  InitialCondition initial;
  std::vector<double> probe_positions;  ///< empty -> single probe at domain/4
  std::vector<double> snapshot_times;
  int energy_stride{1};  ///< energy sample every this many steps; 0 disables
  double shift{0.0};     ///< simulate u = w - shift (set by run_loaded)
  double reference_amplitude{0.0};  ///< 0 -> derived from driver + initial data
};

inline constexpr double courant_limit = 0.9;
inline constexpr double default_points_per_wavelength = 200.0;
inline constexpr double blowup_factor = 1e6;
inline constexpr double far_boundary_margin = 1.1;

/// Fills every defaulted field (dx, dt, domain_length, probes,
/// reference_amplitude) and validates the result:
///   - Courant number v*dt/dx <= 0.9;
///   - dt^2 * max effective stiffness < 2;
///   - domain_length >= 1.1 * signal_speed * t_end + initial support.
/// Throws std::invalid_argument on violations.
void prepare_config(SimConfig& config);

/// Physical speed of the fastest injected signal (c * v of the driving wave,
/// at least base_speed).
double signal_speed(const SimConfig& config);

/// Suggested stable time step for a given spatial step: 0.9 times the
/// explicit bound combining the transport and reaction restrictions.
double stable_dt(const SimConfig& config, double dx);

/// Three-level state of the march.  `current` is the field at `time`,
/// `previous` one step earlier.
struct SimState {
  double time{0.0};
  long step_index{0};
  std::vector<double> previous;
  std::vector<double> current;
  std::vector<double> scratch;  ///< workspace reused by step()
};

/// Builds the state after the first time step: previous = initial data,
/// current = second-order Taylor start
///   w(dt) = w0 + dt * psi + dt^2/2 * (v^2 w0'' - k(w0) w0 + p),
/// with the boundary value overridden by the driver at t = dt and the far
/// end held at zero.  `config` must already be prepared.
SimState first_step(const SimConfig& config);

/// Advances one leapfrog step:
///   w_next = 2 w - w_prev + nu^2 * (laplacian stencil)
///            - dt^2 * (k(w) w - p), reaction evaluated at the current level,
/// then applies boundary values at t + dt.  Throws InstabilityError when
/// max |w| exceeds 1e6 times the injected amplitude.
void step(SimState& state, const SimConfig& config);

struct Snapshot {
  double time{0.0};
  std::vector<double> displacement;
};

struct ProbeSeries {
  double position{0.0};  ///< actual grid position used
  int grid_index{0};
  std::vector<double> times;
  std::vector<double> displacement;
  std::vector<double> velocity;  ///< centered differences (one-sided at the ends)
};

struct EnergySample {
  double time{0.0};  ///< midpoint time (n + 1/2) dt
  double kinetic{0.0};
  double potential{0.0};
  double total{0.0};
  double boundary_flux{0.0};      ///< -v^2 * driver_rate * w_x(0) at the left integer step
  double balance_residual{0.0};   ///< |dE/dt - boundary_flux| at the left integer step
};

struct RunRecord {
  std::vector<double> grid;
  std::vector<Snapshot> snapshots;
  std::vector<ProbeSeries> probes;
  std::vector<EnergySample> energy;
  double cumulative_balance_error{0.0};  ///< |E_end - E_start - integral(flux)| / max E
  double dx{0.0};
  double dt{0.0};
  double domain_length{0.0};
  double t_end{0.0};
};

/// Marches the configured problem to t_end, recording snapshots at the steps
/// nearest the requested times, probe series at every step, and the energy
/// ledger every energy_stride steps.  The config is prepared in place.
RunRecord run(SimConfig config);

/// Loaded variant: integrates the shifted variable u = w - w_p (w_p = p/k1
/// for p < 0, p/k2 for p > 0) so the far field sits at the branch equilibrium,
/// then returns every record converted back to w.  Boundary and initial data
/// in `config` are interpreted in w.  The energy ledger is computed for the
/// shifted variable, whose potential is the convex gap function of the
/// substrate energy (zero at equilibrium).
RunRecord run_loaded(SimConfig config, const LoadedWave& wave);

/// Energy ledger entry for the pair of consecutive fields (w_a at t_a,
/// w_b at t_a + dt), in the scheme-consistent form that the explicit march
/// conserves exactly up to the piecewise-linear reaction: kinetic from the
/// half-step velocity (w_b - w_a)/dt over interior nodes, elastic energy as
/// the two-level product of slopes, substrate energy averaged over the two
/// levels, and boundary flux -v² w_x(0)·ẇ(0) with the first-difference slope
/// and centered boundary rate the identity pairs.  Public mostly for tests.
EnergySample energy_report(const std::vector<double>& w_a, const std::vector<double>& w_b,
                           double t_a, const SimConfig& config);

}  // namespace cablewave

#endif
