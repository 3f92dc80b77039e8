#ifndef CABLEWAVE_VERIFY_HPP
#define CABLEWAVE_VERIFY_HPP

#include <string>
#include <vector>

namespace cablewave {

/// One measured quantity compared against its pinned tolerance.
struct CriterionCheck {
  std::string name;
  bool passed{false};
  double measured{0.0};
  double limit{0.0};
  std::string detail;
};

struct ScenarioResult {
  std::string scenario;
  std::vector<CriterionCheck> checks;
  bool passed{false};
  double seconds{0.0};
};

/// Names of the verification scenarios, in their canonical order:
///   alpha-critical, closed-form, dispersion-endpoints, energy-balance,
///   wave-speed, settled-profile, loaded-extrema, floquet, return-map,
///   envelope-beat.
const std::vector<std::string>& scenario_names();

/// Runs one scenario end to end with its pinned parameters and tolerances.
/// Throws std::invalid_argument for an unknown scenario name.
ScenarioResult run_scenario(const std::string& name);

/// Formats "[PASS]/[FAIL] scenario: check detail" lines for a result.
std::string format_result(const ScenarioResult& result);

}  // namespace cablewave

#endif
