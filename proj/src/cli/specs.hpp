#pragma once

#include "json.hpp"

#include <string>
#include <vector>

namespace fep::cli::detail {

enum class Kind { Real, Integer, Text, RealList };

struct ParamSpec {
  std::string name;
  Kind kind;
  nlohmann::ordered_json fallback;
  std::string help;
};

struct CommandSpec {
  std::string name;
  std::string help;
  std::vector<ParamSpec> params;
};

const std::vector<CommandSpec>& command_specs();
const CommandSpec& command_spec(const std::string& name);

/// Parameters of `command` with every key set to its default.
nlohmann::ordered_json default_parameters(const std::string& command);

}  // namespace fep::cli::detail
