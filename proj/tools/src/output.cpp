#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "hsc/version.hpp"

namespace hsc::cli {

std::string format_double(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void dump(const Json& v, std::string& out) {
  switch (v.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {  // nlohmann objects iterate in key order
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        dump(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        dump(v[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      out += std::isfinite(d) ? format_double(d) : "null";
      break;
    }
    default:
      out += v.dump();
  }
}

std::string cell(const std::variant<double, long long, std::string>& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

}  // namespace

std::string canonical_dump(const Json& value) {
  std::string out;
  dump(value, out);
  return out;
}

std::string render_csv(const CsvTable& table, const std::string& command, const Json& params) {
  std::ostringstream os;
  os << "# hsc " << kVersion << " command=" << command << " params=" << canonical_dump(params) << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell(row[i]);
    os << '\n';
  }
  return os.str();
}

void write_atomically(const std::vector<Artifact>& artifacts) {
  namespace fs = std::filesystem;
  std::vector<std::pair<fs::path, fs::path>> staged;
  auto cleanup = [&] {
    std::error_code ec;
    for (const auto& [tmp, dst] : staged) fs::remove(tmp, ec);
  };
  for (const auto& a : artifacts) {
    const fs::path dst(a.path);
    fs::path tmp = dst;
    tmp += ".tmp";
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      cleanup();
      throw IoError("cannot write " + a.path);
    }
    staged.emplace_back(tmp, dst);
    out << a.content;
    out.close();
    if (!out) {
      cleanup();
      throw IoError("cannot write " + a.path);
    }
  }
  for (const auto& [tmp, dst] : staged) {
    std::error_code ec;
    fs::rename(tmp, dst, ec);
    if (ec) {
      cleanup();
      throw IoError("cannot rename into " + dst.string() + ": " + ec.message());
    }
  }
}

}  // namespace hsc::cli
