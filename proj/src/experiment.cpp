#include "cablewave/experiment.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <system_error>
#include <utility>

#include "cablewave/verify.hpp"

namespace cablewave {

namespace {

struct CommandNamePair {
  Command command;
  const char* name;
};

constexpr std::array<CommandNamePair, 8> command_names{{
    {Command::analytic, "analytic"},
    {Command::dispersion, "dispersion"},
    {Command::simulate, "simulate"},
    {Command::simulate_loaded, "simulate-loaded"},
    {Command::stability, "stability"},
    {Command::floquet, "floquet"},
    {Command::extrema_sweep, "extrema-sweep"},
    {Command::verify, "verify"},
}};

std::string all_command_names() {
  std::string joined;
  for (const auto& entry : command_names) {
    if (!joined.empty()) {
      joined += ",";
    }
    joined += entry.name;
  }
  return joined;
}

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) {
    return "";
  }
  const auto end = text.find_last_not_of(" \t\r\n");
  return text.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string current;
  for (const char c : text) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!current.empty()) {
        items.push_back(current);
        current.clear();
      }
    } else {
      current += c;
    }
  }
  if (!current.empty()) {
    items.push_back(current);
  }
  return items;
}

std::string joined_choices(const ParamInfo& info) {
  std::string joined;
  for (const std::string& choice : info.choices) {
    if (!joined.empty()) {
      joined += ",";
    }
    joined += choice;
  }
  return joined;
}

void check_min(const ParamInfo& info, double value) {
  if (!info.has_min) {
    return;
  }
  const bool ok = info.min_exclusive ? value > info.min_value : value >= info.min_value;
  if (!ok) {
    throw SpecError("invalid value: " + info.key + " must be " +
                    (info.min_exclusive ? "> " : ">= ") + format_number(info.min_value));
  }
}

long parse_integer(const std::string& text, const std::string& key) {
  std::string trimmed = trim(text);
  if (!trimmed.empty() && trimmed.front() == '+') {
    trimmed.erase(0, 1);
  }
  long value = 0;
  const char* first = trimmed.data();
  const char* last = trimmed.data() + trimmed.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (trimmed.empty() || ec != std::errc{} || ptr != last) {
    throw SpecError("invalid value: " + key + " is not an integer (got '" + text + "')");
  }
  return value;
}

}  // namespace

const char* command_name(Command command) {
  for (const auto& entry : command_names) {
    if (entry.command == command) {
      return entry.name;
    }
  }
  return "unknown";
}

Command command_from_name(const std::string& name) {
  for (const auto& entry : command_names) {
    if (name == entry.name) {
      return entry.command;
    }
  }
  throw SpecError("invalid value: command must be one of " + all_command_names() + " (got '" +
                  name + "')");
}

const std::vector<ParamInfo>& param_registry() {
  static const std::vector<ParamInfo> registry = [] {
    std::vector<ParamInfo> params;
    const auto add = [&params](std::string key, ParamType type, std::string help) -> ParamInfo& {
      ParamInfo info;
      info.key = std::move(key);
      info.type = type;
      info.help = std::move(help);
      params.push_back(std::move(info));
      return params.back();
    };
    const auto with_min = [](ParamInfo& info, double min_value, bool exclusive) {
      info.has_min = true;
      info.min_value = min_value;
      info.min_exclusive = exclusive;
    };

    {
      ParamInfo& info = add("command", ParamType::text, "command to run");
      for (const auto& entry : command_names) {
        info.choices.emplace_back(entry.name);
      }
    }
    with_min(add("k1", ParamType::number, "compression-side substrate stiffness"), 0.0, false);
    with_min(add("k2", ParamType::number, "tension-side substrate stiffness"), 0.0, false);
    with_min(add("n", ParamType::integer, "sub-waves per wavelength"), 1.0, false);
    with_min(add("L", ParamType::number, "wavelength"), 0.0, true);
    with_min(add("v", ParamType::number, "taut-string base speed"), 0.0, true);
    add("amplitude", ParamType::number, "tension-lobe peak of the wave (free scale)");
    add("p", ParamType::number, "uniform distributed load");
    with_min(add("alpha", ParamType::number, "compression fraction of the period"), 0.0, true);
    with_min(add("branch", ParamType::integer, "dispersion root index (0 = lowest)"), 0.0, false);
    with_min(add("a-max", ParamType::number, "dispersion scan upper limit (0 = auto)"), 0.0,
             false);
    with_min(add("grid", ParamType::integer, "dispersion scan sample count"), 16.0, false);
    with_min(add("samples", ParamType::integer, "table sampling count"), 2.0, false);
    with_min(add("t-end", ParamType::number, "simulated time span"), 0.0, true);
    with_min(add("dx", ParamType::number, "grid spacing (0 = auto)"), 0.0, false);
    with_min(add("dt", ParamType::number, "time step (0 = auto)"), 0.0, false);
    with_min(add("domain-length", ParamType::number, "domain length (0 = auto)"), 0.0, false);
    with_min(add("probes", ParamType::number_list, "probe positions (empty = auto)"), 0.0,
             false);
    with_min(add("snapshot-times", ParamType::number_list, "snapshot times"), 0.0, false);
    with_min(add("energy-stride", ParamType::integer, "energy sampling stride (0 = off)"), 0.0,
             false);
    {
      ParamInfo& info = add("boundary", ParamType::text, "boundary driver kind");
      info.choices = {"zero", "wave-trace", "loaded-trace"};
    }
    add("trace-scale", ParamType::number, "signed multiplier on the boundary trace");
    with_min(add("ramp-time", ParamType::number, "smooth-start ramp length (0 = off)"), 0.0,
             false);
    {
      ParamInfo& info = add("ic-kind", ParamType::text, "initial condition kind");
      info.choices = {"zero", "decaying-sinusoid", "cosine-bump", "constant", "wave-field"};
    }
    add("ic-amplitude", ParamType::number, "initial condition amplitude");
    add("ic-wavenumber", ParamType::number, "initial condition wavenumber");
    with_min(add("ic-decay", ParamType::number, "initial condition decay rate"), 0.0, false);
    with_min(add("ic-center", ParamType::number, "initial bump center"), 0.0, false);
    with_min(add("ic-halfwidth", ParamType::number, "initial bump halfwidth"), 0.0, false);
    add("ic-constant", ParamType::number, "initial constant displacement");
    {
      ParamInfo& info = add("perturbation", ParamType::text, "perturbation kind");
      info.choices = {"none", "boundary-harmonic", "initial-profile"};
    }
    with_min(add("epsilon", ParamType::number, "perturbation amplitude"), 0.0, false);
    with_min(add("omega1-ratio", ParamType::number,
                 "perturbation frequency as a multiple of the wave frequency"),
             0.0, false);
    with_min(add("probe-position", ParamType::number, "return-map probe position (0 = auto)"),
             0.0, false);
    with_min(add("skip-time", ParamType::number, "transient skip before sampling (0 = auto)"),
             0.0, false);
    with_min(add("alpha-min", ParamType::number, "sweep lower alpha"), 0.0, true);
    with_min(add("alpha-max", ParamType::number, "sweep upper alpha"), 0.0, true);
    with_min(add("alpha-count", ParamType::integer, "sweep point count"), 2.0, false);
    {
      ParamInfo& info = add("scenario", ParamType::text, "verification scenario");
      info.choices.emplace_back("all");
      for (const std::string& name : scenario_names()) {
        info.choices.push_back(name);
      }
    }
    add("out", ParamType::text, "output directory");
    {
      ParamInfo& info = add("format", ParamType::text, "output format selector");
      info.choices = {"csv"};
    }
    return params;
  }();
  return registry;
}

const ParamInfo* find_param(const std::string& key) {
  for (const ParamInfo& info : param_registry()) {
    if (info.key == key) {
      return &info;
    }
  }
  return nullptr;
}

std::string format_number(double value) {
  if (value == 0.0) {
    return "0";  // canonicalize the two signed zeros
  }
  std::array<char, 64> buffer{};
  const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value,
                                       std::chars_format::general, 17);
  (void)ec;
  return std::string(buffer.data(), ptr);
}

double parse_number(const std::string& text, const std::string& key_for_errors) {
  std::string trimmed = trim(text);
  if (!trimmed.empty() && trimmed.front() == '+') {
    trimmed.erase(0, 1);
  }
  double value = 0.0;
  const char* first = trimmed.data();
  const char* last = trimmed.data() + trimmed.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (trimmed.empty() || ec != std::errc{} || ptr != last) {
    throw SpecError("invalid value: " + key_for_errors + " is not a number (got '" + text +
                    "')");
  }
  if (!std::isfinite(value)) {
    throw SpecError("invalid value: " + key_for_errors + " must be finite");
  }
  return value;
}

double ExperimentSpec::number(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) {
    throw SpecError("missing required: " + key);
  }
  return parse_number(it->second, key);
}

double ExperimentSpec::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

long ExperimentSpec::integer(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) {
    throw SpecError("missing required: " + key);
  }
  return parse_integer(it->second, key);
}

long ExperimentSpec::integer_or(const std::string& key, long fallback) const {
  return has(key) ? integer(key) : fallback;
}

std::string ExperimentSpec::text_or(const std::string& key, const std::string& fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::vector<double> ExperimentSpec::list(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) {
    throw SpecError("missing required: " + key);
  }
  std::vector<double> values;
  for (const std::string& item : split_list(it->second)) {
    values.push_back(parse_number(item, key));
  }
  return values;
}

void ExperimentSpec::set_number(const std::string& key, double value) {
  params[key] = format_number(value);
}

void ExperimentSpec::set_integer(const std::string& key, long value) {
  params[key] = std::to_string(value);
}

void ExperimentSpec::set_text(const std::string& key, const std::string& value) {
  params[key] = value;
}

void ExperimentSpec::set_list(const std::string& key, const std::vector<double>& values) {
  std::string joined;
  for (const double value : values) {
    if (!joined.empty()) {
      joined += ",";
    }
    joined += format_number(value);
  }
  params[key] = joined;
}

void apply_param(ExperimentSpec& spec, const std::string& key, const std::string& value) {
  const ParamInfo* info = find_param(key);
  if (info == nullptr) {
    throw SpecError("unknown key: " + key);
  }
  switch (info->type) {
    case ParamType::number: {
      const double parsed = parse_number(value, key);
      check_min(*info, parsed);
      spec.params[key] = format_number(parsed);
      break;
    }
    case ParamType::integer: {
      const long parsed = parse_integer(value, key);
      check_min(*info, static_cast<double>(parsed));
      spec.params[key] = std::to_string(parsed);
      break;
    }
    case ParamType::text: {
      const std::string trimmed = trim(value);
      if (!info->choices.empty() &&
          std::find(info->choices.begin(), info->choices.end(), trimmed) ==
              info->choices.end()) {
        throw SpecError("invalid value: " + key + " must be one of " + joined_choices(*info) +
                        " (got '" + trimmed + "')");
      }
      spec.params[key] = trimmed;
      break;
    }
    case ParamType::number_list: {
      std::string joined;
      for (const std::string& item : split_list(value)) {
        const double parsed = parse_number(item, key);
        check_min(*info, parsed);
        if (!joined.empty()) {
          joined += ",";
        }
        joined += format_number(parsed);
      }
      spec.params[key] = joined;
      break;
    }
  }
}

namespace {

ExperimentSpec parse_file_raw(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw SpecError("invalid value: config file '" + path + "' cannot be opened");
  }
  ExperimentSpec spec;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    line_number += 1;
    const auto comment = line.find('#');
    if (comment != std::string::npos) {
      line.erase(comment);
    }
    const std::string content = trim(line);
    if (content.empty()) {
      continue;
    }
    const auto equals = content.find('=');
    if (equals == std::string::npos) {
      throw SpecError("invalid value: line " + std::to_string(line_number) + " of '" + path +
                      "' is not a key = value pair");
    }
    const std::string key = trim(content.substr(0, equals));
    const std::string value = trim(content.substr(equals + 1));
    if (key.empty()) {
      throw SpecError("invalid value: line " + std::to_string(line_number) + " of '" + path +
                      "' has an empty key");
    }
    apply_param(spec, key, value);
  }
  return spec;
}

/// Required/defaulted keys per command; nullptr fallback marks a required key.
struct PlanEntry {
  const char* key;
  const char* fallback;
};

const std::vector<PlanEntry>& command_plan(Command command) {
  static const std::vector<PlanEntry> analytic = {
      {"k1", nullptr},    {"k2", nullptr},     {"n", "1"},      {"L", "1"},
      {"v", "1"},         {"amplitude", "1"},  {"samples", "1001"},
      {"out", "out"},     {"format", "csv"},
  };
  static const std::vector<PlanEntry> dispersion = {
      {"k1", nullptr},   {"k2", nullptr},   {"alpha", nullptr}, {"a-max", "0"},
      {"grid", "20000"}, {"samples", "2000"}, {"out", "out"},   {"format", "csv"},
  };
  static const std::vector<PlanEntry> simulate = {
      {"k1", nullptr},        {"k2", nullptr},        {"n", "1"},
      {"L", "1"},             {"v", "1"},             {"amplitude", "1"},
      {"t-end", nullptr},     {"dx", "0"},            {"dt", "0"},
      {"domain-length", "0"}, {"probes", ""},         {"snapshot-times", ""},
      {"energy-stride", "1"}, {"boundary", "wave-trace"}, {"trace-scale", "1"},
      {"ramp-time", "0"},     {"ic-kind", "zero"},    {"ic-amplitude", "0"},
      {"ic-wavenumber", "0"}, {"ic-decay", "0"},      {"ic-center", "0"},
      {"ic-halfwidth", "0"},  {"ic-constant", "0"},   {"out", "out"},
      {"format", "csv"},
  };
  static const std::vector<PlanEntry> simulate_loaded = {
      {"k1", nullptr},        {"k2", nullptr},      {"p", nullptr},
      {"alpha", nullptr},     {"branch", "0"},      {"L", "1"},
      {"v", "1"},             {"t-end", nullptr},   {"a-max", "0"},
      {"grid", "20000"},      {"dx", "0"},          {"dt", "0"},
      {"domain-length", "0"}, {"probes", ""},       {"snapshot-times", ""},
      {"energy-stride", "1"}, {"ramp-time", "0"},   {"out", "out"},
      {"format", "csv"},
  };
  static const std::vector<PlanEntry> stability = {
      {"k1", nullptr},        {"k2", nullptr},        {"n", "1"},
      {"L", "1"},             {"v", "1"},             {"amplitude", "0.01"},
      {"t-end", nullptr},     {"perturbation", "boundary-harmonic"},
      {"epsilon", "0.001"},   {"omega1-ratio", "1.1"}, {"dx", "0"},
      {"dt", "0"},            {"domain-length", "0"}, {"probe-position", "0"},
      {"skip-time", "0"},     {"ramp-time", "0"},     {"out", "out"},
      {"format", "csv"},
  };
  static const std::vector<PlanEntry> floquet = {
      {"k1", nullptr}, {"k2", nullptr},    {"n", "1"},     {"L", "1"},
      {"v", "1"},      {"amplitude", "1"}, {"out", "out"}, {"format", "csv"},
  };
  static const std::vector<PlanEntry> extrema_sweep = {
      {"k1", nullptr},       {"k2", nullptr},       {"p", "-0.01"},
      {"branch", "0"},       {"alpha-min", "0.05"}, {"alpha-max", "0.95"},
      {"alpha-count", "181"}, {"a-max", "0"},       {"grid", "20000"},
      {"out", "out"},        {"format", "csv"},
  };
  static const std::vector<PlanEntry> verify = {
      {"scenario", "all"},
      {"out", "out"},
      {"format", "csv"},
  };
  switch (command) {
    case Command::analytic:
      return analytic;
    case Command::dispersion:
      return dispersion;
    case Command::simulate:
      return simulate;
    case Command::simulate_loaded:
      return simulate_loaded;
    case Command::stability:
      return stability;
    case Command::floquet:
      return floquet;
    case Command::extrema_sweep:
      return extrema_sweep;
    case Command::verify:
      return verify;
  }
  return verify;
}

}  // namespace

void resolve_defaults(ExperimentSpec& spec) {
  if (!spec.has("command")) {
    throw SpecError("missing required: command");
  }
  spec.command = command_from_name(spec.params.at("command"));
  const std::vector<PlanEntry>& plan = command_plan(spec.command);

  for (const auto& [key, value] : spec.params) {
    if (key == "command") {
      continue;
    }
    const bool known = std::any_of(plan.begin(), plan.end(),
                                   [&](const PlanEntry& entry) { return key == entry.key; });
    if (!known) {
      throw SpecError("unknown key: " + key + " is not used by command " +
                      command_name(spec.command));
    }
  }
  for (const PlanEntry& entry : plan) {
    if (spec.has(entry.key)) {
      continue;
    }
    if (entry.fallback == nullptr) {
      throw SpecError("missing required: " + std::string(entry.key));
    }
    apply_param(spec, entry.key, entry.fallback);
  }

  // Cross-field coherence.
  if (spec.command == Command::simulate_loaded && spec.number("p") == 0.0) {
    throw SpecError("invalid value: p must be nonzero for simulate-loaded");
  }
  if ((spec.command == Command::dispersion || spec.command == Command::simulate_loaded) &&
      !(spec.number("alpha") < 1.0)) {
    throw SpecError("invalid value: alpha must lie strictly between 0 and 1");
  }
  if (spec.command == Command::extrema_sweep) {
    if (!(spec.number("alpha-min") < spec.number("alpha-max"))) {
      throw SpecError("invalid value: alpha-min must be below alpha-max");
    }
    if (!(spec.number("alpha-max") < 1.0)) {
      throw SpecError("invalid value: alpha-max must lie strictly below 1");
    }
    if (spec.number("p") == 0.0) {
      throw SpecError("invalid value: p must be nonzero for extrema-sweep");
    }
  }
}

std::vector<CommandKey> command_keys(Command command) {
  std::vector<CommandKey> keys;
  for (const PlanEntry& entry : command_plan(command)) {
    CommandKey key;
    key.key = entry.key;
    key.required = entry.fallback == nullptr;
    if (!key.required) {
      key.fallback = entry.fallback;
    }
    keys.push_back(std::move(key));
  }
  return keys;
}

ExperimentSpec parse_spec(const std::vector<std::string>& args) {
  ExperimentSpec spec;
  std::optional<std::string> command_token;
  std::vector<std::pair<std::string, std::string>> flags;

  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& token = args[i];
    if (token.rfind("--", 0) != 0) {
      if (i == 0) {
        command_token = token;
        continue;
      }
      throw SpecError("invalid value: unexpected token '" + token +
                      "' (flags look like --key value)");
    }
    std::string key = token.substr(2);
    std::string value;
    const auto equals = key.find('=');
    if (equals != std::string::npos) {
      value = key.substr(equals + 1);
      key = key.substr(0, equals);
    } else {
      if (i + 1 >= args.size()) {
        throw SpecError("invalid value: flag --" + key + " expects a value");
      }
      value = args[++i];
    }
    if (key == "config") {
      const ExperimentSpec file_spec = parse_file_raw(value);
      for (const auto& [file_key, file_value] : file_spec.params) {
        spec.params[file_key] = file_value;  // already canonical
      }
    } else {
      flags.emplace_back(key, value);
    }
  }

  for (const auto& [key, value] : flags) {
    apply_param(spec, key, value);
  }
  if (command_token) {
    apply_param(spec, "command", *command_token);
  }
  resolve_defaults(spec);
  return spec;
}

ExperimentSpec parse_spec_file(const std::string& path) {
  ExperimentSpec spec = parse_file_raw(path);
  resolve_defaults(spec);
  return spec;
}

std::string spec_to_config_text(const ExperimentSpec& spec) {
  std::ostringstream out;
  out << "command = " << spec.text_or("command", command_name(spec.command)) << "\n";
  for (const auto& [key, value] : spec.params) {
    if (key == "command") {
      continue;
    }
    out << key << " = " << value << "\n";
  }
  return out.str();
}

}  // namespace cablewave
