#ifndef CABLEWAVE_EXECUTE_HPP
#define CABLEWAVE_EXECUTE_HPP

#include "cablewave/emit.hpp"
#include "cablewave/experiment.hpp"

namespace cablewave {

/// Runs one fully resolved experiment and collects its tables and summary
/// facts.  Every command is handled here except `verify`, which reports
/// through run_scenario / format_result instead of tables; passing a verify
/// spec throws std::invalid_argument.
RunArtifacts execute_spec(const ExperimentSpec& spec);

}  // namespace cablewave

#endif  // CABLEWAVE_EXECUTE_HPP
