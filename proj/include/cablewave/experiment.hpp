#ifndef CABLEWAVE_EXPERIMENT_HPP
#define CABLEWAVE_EXPERIMENT_HPP

#include <map>
#include <string>
#include <vector>

#include "cablewave/errors.hpp"

namespace cablewave {

enum class Command {
  analytic,
  dispersion,
  simulate,
  simulate_loaded,
  stability,
  floquet,
  extrema_sweep,
  verify,
};

const char* command_name(Command command);
Command command_from_name(const std::string& name);

/// Value type of an experiment parameter.
enum class ParamType { number, integer, text, number_list };

struct ParamInfo {
  std::string key;
  ParamType type{ParamType::number};
  std::string help;
  double min_value{0.0};
  bool has_min{false};
  bool min_exclusive{false};
  std::vector<std::string> choices;  ///< for text params with a fixed vocabulary
};

/// Registry of every recognized parameter key (shared by the CLI flags, the
/// config-file reader, and the metadata echo).
const std::vector<ParamInfo>& param_registry();
const ParamInfo* find_param(const std::string& key);

/// A fully described experiment: one command plus a flat key -> value map.
/// Values are stored canonically (numbers re-rendered with 17 significant
/// digits) so that emitted echoes parse back to an identical spec.
struct ExperimentSpec {
  Command command{Command::analytic};
  std::map<std::string, std::string> params;

  [[nodiscard]] bool has(const std::string& key) const { return params.count(key) != 0; }
  [[nodiscard]] double number(const std::string& key) const;
  [[nodiscard]] double number_or(const std::string& key, double fallback) const;
  [[nodiscard]] long integer(const std::string& key) const;
  [[nodiscard]] long integer_or(const std::string& key, long fallback) const;
  [[nodiscard]] std::string text_or(const std::string& key, const std::string& fallback) const;
  [[nodiscard]] std::vector<double> list(const std::string& key) const;

  void set_number(const std::string& key, double value);
  void set_integer(const std::string& key, long value);
  void set_text(const std::string& key, const std::string& value);
  void set_list(const std::string& key, const std::vector<double>& values);

  bool operator==(const ExperimentSpec& other) const = default;
};

/// Parses "--key value" / "--key=value" tokens (the first token may name the
/// command).  A "--config PATH" token loads a config file first; explicit
/// flags override file entries.  Throws SpecError with messages starting
/// "unknown key", "missing required" or "invalid value", naming the key.
ExperimentSpec parse_spec(const std::vector<std::string>& args);

/// Parses a flat "key = value" config file ('#' starts a comment; blank lines
/// ignored).  The command is given by the "command" key.
ExperimentSpec parse_spec_file(const std::string& path);

/// Validates a single key/value pair against the registry and stores the
/// canonical rendering into the spec.
void apply_param(ExperimentSpec& spec, const std::string& key, const std::string& value);

/// One entry of a command's parameter plan.
struct CommandKey {
  std::string key;
  bool required{false};
  std::string fallback;  ///< default value when not required
};

/// The keys a command consumes, in plan order (required keys first carry no
/// fallback).  Shared by the CLI help text and the tests.
std::vector<CommandKey> command_keys(Command command);

/// Fills per-command defaults and checks that required keys are present and
/// coherent; after this every parameter the command consumes is present
/// explicitly, so echoed specs round-trip exactly.
void resolve_defaults(ExperimentSpec& spec);

/// Renders the spec as config-file text ("key = value" lines).
std::string spec_to_config_text(const ExperimentSpec& spec);

/// Canonical 17-significant-digit, locale-independent rendering of a double.
std::string format_number(double value);
/// Exact inverse of format_number (also accepts any ordinary decimal text).
double parse_number(const std::string& text, const std::string& key_for_errors);

}  // namespace cablewave

#endif
