#include "cablewave/emit.hpp"

#include <filesystem>
#include <fstream>
#include <string>
#include <system_error>

#include "cablewave/version.hpp"
#include "json.hpp"

namespace cablewave {

namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  out << content;
  out.flush();
  if (!out) {
    throw IoError("failed while writing '" + path.string() + "'");
  }
}

}  // namespace

std::string table_to_csv(const Table& table) {
  std::string text;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) {
      text += ",";
    }
    text += table.columns[c];
  }
  text += "\n";
  for (const std::vector<double>& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) {
        text += ",";
      }
      text += format_number(row[c]);
    }
    text += "\n";
  }
  return text;
}

EmitResult emit(const RunArtifacts& artifacts, const std::string& out_dir) {
  const fs::path root(out_dir);
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());
  }

  EmitResult result;

  for (const Table& table : artifacts.tables) {
    const fs::path path = root / (table.name + ".csv");
    write_file(path, table_to_csv(table));
    result.files.push_back(path.string());
  }

  std::string meta;
  {
    nlohmann::json run;
    run["record"] = "run";
    run["command"] = command_name(artifacts.spec.command);
    run["artifact"] = artifact_name;
    run["version"] = artifact_version;
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [key, value] : artifacts.spec.params) {
      params[key] = value;
    }
    run["params"] = std::move(params);
    nlohmann::json facts = nlohmann::json::object();
    for (const auto& [key, value] : artifacts.facts) {
      facts[key] = value;
    }
    run["facts"] = std::move(facts);
    meta += run.dump();
    meta += "\n";
    for (const Table& table : artifacts.tables) {
      nlohmann::json entry;
      entry["record"] = "table";
      entry["name"] = table.name;
      entry["file"] = table.name + ".csv";
      entry["columns"] = table.columns;
      entry["rows"] = table.rows.size();
      meta += entry.dump();
      meta += "\n";
    }
  }
  const fs::path meta_path = root / "meta.jsonl";
  write_file(meta_path, meta);
  result.files.push_back(meta_path.string());

  const fs::path config_path = root / "config.cfg";
  write_file(config_path, spec_to_config_text(artifacts.spec));
  result.files.push_back(config_path.string());

  return result;
}

}  // namespace cablewave
