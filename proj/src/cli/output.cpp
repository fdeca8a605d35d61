#include "cli/output.hpp"

#include "weyl/error.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace weyl::cli {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string render_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << '\n';
  }
  return os.str();
}

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace

std::filesystem::path write_outputs(const std::filesystem::path& dir, const std::string& subcommand,
                                    const Json& config, const CommandResult& result) {
  std::filesystem::create_directories(dir);
  Json files = Json::array();
  for (const auto& t : result.tables) {
    const std::string name = t.name + ".csv";
    write_file(dir / name, render_csv(t));
    files.push_back(name);
  }
  Json manifest;
  manifest["artifact_version"] = kArtifactVersion;
  manifest["subcommand"] = subcommand;
  manifest["seed"] = config.contains("seed") ? config["seed"] : Json(nullptr);
  manifest["timestamp"] = utc_timestamp();
  manifest["full_config"] = config;
  manifest["outputs"] = files;
  manifest["results"] = result.results;
  const auto path = dir / (subcommand + ".manifest.json");
  write_file(path, manifest.dump(2) + "\n");
  return path;
}

Json read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read manifest " + path.string());
  try {
    Json m = Json::parse(in);
    if (!m.contains("subcommand") || !m.contains("full_config")) {
      throw PreconditionError("manifest " + path.string() + " lacks subcommand/full_config");
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError("manifest " + path.string() + " is not valid JSON: " + e.what());
  }
}

}  // namespace weyl::cli
