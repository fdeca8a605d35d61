#pragma once

#include "cli/config.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace weyl::cli {

/// A numeric CSV table; `header` names the columns.
struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct CommandResult {
  std::vector<Table> tables;
  /// Summary values recorded in the manifest (fits, maxima, ...).
  Json results = Json::object();
};

/// 17 significant digits, so values round-trip exactly.
std::string format_number(double v);

std::string render_csv(const Table& t);

/// Writes <name>.csv for every table plus <subcommand>.manifest.json into `dir`.
/// Returns the manifest path.
std::filesystem::path write_outputs(const std::filesystem::path& dir, const std::string& subcommand,
                                    const Json& config, const CommandResult& result);

Json read_manifest(const std::filesystem::path& path);

}  // namespace weyl::cli
