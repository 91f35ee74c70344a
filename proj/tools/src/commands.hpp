#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "output.hpp"
#include "scenario.hpp"

namespace hsc::cli {

struct CommandResult {
  Json result = Json::object();
  std::optional<CsvTable> csv;
};

using Command = std::function<CommandResult(const Params&)>;

// Tag ("weights.classify", ...) to implementation.
const std::map<std::string, Command>& command_registry();

}  // namespace hsc::cli
