#pragma once

#include "cli/output.hpp"

#include <string>
#include <vector>

namespace weyl::cli {

struct OptionSpec {
  std::string key;
  std::string default_value;
  std::string help;
};

struct CommandSpec {
  std::string name;
  std::string description;
  std::vector<OptionSpec> options;
};

/// Every experiment subcommand with its options and defaults.
const std::vector<CommandSpec>& command_specs();

/// Runs a subcommand on a fully populated config (string values keyed as in
/// command_specs). Does not touch the filesystem.
CommandResult execute(const std::string& subcommand, const Json& config);

}  // namespace weyl::cli
