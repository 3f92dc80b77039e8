#ifndef CABLEWAVE_EMIT_HPP
#define CABLEWAVE_EMIT_HPP

#include <string>
#include <utility>
#include <vector>

#include "cablewave/experiment.hpp"

namespace cablewave {

/// One numeric table destined for a CSV file.
struct Table {
  std::string name;  ///< file stem; written as <name>.csv
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Everything a command run wants persisted: the resolved spec, the data
/// tables, and scalar facts (measured or derived values) for the metadata.
struct RunArtifacts {
  ExperimentSpec spec;
  std::vector<Table> tables;
  std::vector<std::pair<std::string, std::string>> facts;
};

struct EmitResult {
  std::vector<std::string> files;  ///< paths written, in order
};

/// Writes the artifacts into `out_dir` (created if needed):
///   - one CSV per table, header row first, numbers with 17 significant
///     digits, '\n' line endings — byte-identical for identical inputs;
///   - meta.jsonl: line-delimited JSON records (run record with the full
///     parameter echo and artifact version, then one record per table);
///   - config.cfg: "key = value" echo that parse_spec_file maps back to
///     exactly the resolved spec.
/// Throws IoError when a file cannot be written.
EmitResult emit(const RunArtifacts& artifacts, const std::string& out_dir);

/// CSV text for one table (exposed for tests).
std::string table_to_csv(const Table& table);

}  // namespace cablewave

#endif
