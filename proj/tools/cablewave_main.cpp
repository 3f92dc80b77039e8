#include <algorithm>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "cablewave/errors.hpp"
#include "cablewave/execute.hpp"
#include "cablewave/experiment.hpp"
#include "cablewave/verify.hpp"
#include "cablewave/version.hpp"

namespace {

using namespace cablewave;

constexpr const char* command_summaries[][2] = {
    {"analytic", "closed-form periodic wave profile and its constants"},
    {"dispersion", "loaded-wave wavenumber roots, poles, and residual scan"},
    {"simulate", "finite-difference run driven by a boundary trace"},
    {"simulate-loaded", "finite-difference run about the loaded equilibrium"},
    {"stability", "stroboscopic return map of a perturbed wave"},
    {"floquet", "period map and multipliers of the closed-form wave"},
    {"extrema-sweep", "loaded extrema across the compression fraction"},
    {"verify", "built-in verification scenarios with pinned tolerances"},
};

const char* type_label(ParamType type) {
  switch (type) {
    case ParamType::number:
      return "number";
    case ParamType::integer:
      return "integer";
    case ParamType::text:
      return "text";
    case ParamType::number_list:
      return "list";
  }
  return "value";
}

void print_command_help(Command command, std::ostream& out) {
  out << "usage: " << artifact_name << " " << command_name(command)
      << " [--key value]... [--config FILE]\n\nkeys:\n";
  for (const CommandKey& entry : command_keys(command)) {
    const ParamInfo* info = find_param(entry.key);
    std::string line = "  --" + entry.key + " <" + type_label(info->type) + ">";
    line.resize(std::max<std::size_t>(line.size() + 2, 30), ' ');
    line += info->help;
    if (entry.required) {
      line += " [required]";
    } else if (!entry.fallback.empty()) {
      line += " [default " + entry.fallback + "]";
    }
    out << line << "\n";
    if (!info->choices.empty()) {
      out << std::string(30, ' ') << "one of: ";
      for (std::size_t i = 0; i < info->choices.size(); ++i) {
        out << (i == 0 ? "" : ", ") << info->choices[i];
      }
      out << "\n";
    }
  }
}

void print_usage(std::ostream& out) {
  out << artifact_name << " " << artifact_version
      << " — periodic waves on a cable over a bilinear substrate\n\n"
      << "usage: " << artifact_name << " <command> [--key value]... [--config FILE]\n"
      << "       " << artifact_name << " <command> --help\n\ncommands:\n";
  for (const auto& entry : command_summaries) {
    std::string line = "  ";
    line += entry[0];
    line.resize(19, ' ');
    out << line << entry[1] << "\n";
  }
  out << "\nresults land in the --out directory as CSV tables plus meta.jsonl\n"
      << "and config.cfg; exit codes: 0 success, 1 run or verification\n"
      << "failure, 2 usage error\n";
}

int run_verify(const ExperimentSpec& spec) {
  const std::string requested = spec.text_or("scenario", "all");
  std::vector<std::string> names;
  if (requested == "all") {
    names = scenario_names();
  } else {
    names.push_back(requested);
  }
  int failed = 0;
  for (const std::string& name : names) {
    const ScenarioResult result = run_scenario(name);
    std::cout << format_result(result);
    if (!result.passed) {
      failed += 1;
    }
  }
  std::cout << (failed == 0 ? "verified " : "FAILED ") << names.size() << " scenario"
            << (names.size() == 1 ? "" : "s");
  if (failed != 0) {
    std::cout << " (" << failed << " failing)";
  }
  std::cout << "\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);

  if (args.empty()) {
    // Nothing asked for: show usage, but report it as a usage error.
    print_usage(std::cerr);
    return 2;
  }

  const bool wants_help = std::any_of(args.begin(), args.end(), [](const std::string& arg) {
    return arg == "--help" || arg == "-h";
  });
  if (wants_help) {
    if (args.front().rfind("--", 0) != 0 && args.front() != "-h") {
      try {
        print_command_help(command_from_name(args.front()), std::cout);
        return 0;
      } catch (const SpecError& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 2;
      }
    }
    print_usage(std::cout);
    return 0;
  }

  try {
    const ExperimentSpec spec = parse_spec(args);
    if (spec.command == Command::verify) {
      return run_verify(spec);
    }
    const RunArtifacts artifacts = execute_spec(spec);
    const EmitResult emitted = emit(artifacts, spec.text_or("out", "out"));
    for (const std::string& file : emitted.files) {
      std::cout << "wrote " << file << "\n";
    }
    return 0;
  } catch (const SpecError& error) {
    std::cerr << "error: " << error.what() << "\n"
              << "run '" << artifact_name << " --help' for usage\n";
    return 2;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
}
