#pragma once

// Report emission: canonical JSON, CSV tables with a provenance line, and
// all-or-nothing artifact writes.

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace hsc::cli {

using Json = nlohmann::json;

// Sorted keys, no whitespace, floats as %.17g, non-finite floats as null.
std::string canonical_dump(const Json& value);

std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::variant<double, long long, std::string>>> rows;

  void add(std::vector<std::variant<double, long long, std::string>> row) { rows.push_back(std::move(row)); }
};

// "# hsc <version> command=<tag> params=<canonical params>" then the header.
std::string render_csv(const CsvTable& table, const std::string& command, const Json& params);

struct Artifact {
  std::string path;
  std::string content;
};

// Writes every artifact to a sibling temp file first and renames only after
// all writes succeeded. Throws IoError and leaves no file behind on failure.
void write_atomically(const std::vector<Artifact>& artifacts);

}  // namespace hsc::cli
