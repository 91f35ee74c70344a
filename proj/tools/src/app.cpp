#include "app.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "errors.hpp"
#include "hsc/error.hpp"
#include "hsc/version.hpp"

namespace hsc::cli {
namespace {

struct Invocation {
  std::string command;      // from the subcommand path; empty for `run`
  std::string scenario_path;
  std::string params_text;
  std::string json_out, csv_out;
};

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw MalformedError(origin + ": " + e.what());
  }
}

Json load_scenario(const Invocation& inv) {
  Json scenario = Json::object();
  if (!inv.scenario_path.empty()) {
    std::ifstream in(inv.scenario_path, std::ios::binary);
    if (!in) throw IoError("cannot read " + inv.scenario_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    scenario = parse_json(buf.str(), inv.scenario_path);
  }
  if (!scenario.is_object()) throw MalformedError("scenario must be a JSON object");
  if (!inv.params_text.empty()) {
    const Json extra = parse_json(inv.params_text, "--params");
    if (!extra.is_object()) throw MalformedError("--params must be a JSON object");
    scenario.merge_patch(extra);
  }
  return scenario;
}

int execute(const Invocation& inv, std::ostream& out) {
  Json scenario = load_scenario(inv);
  std::string command = inv.command;
  if (scenario.contains("command")) {
    if (!scenario["command"].is_string()) throw ValidationError("command", "command must be a string");
    const auto tag = scenario["command"].get<std::string>();
    if (!command.empty() && tag != command)
      throw UsageError("scenario command " + tag + " does not match subcommand " + command);
    command = tag;
  }
  if (command.empty()) throw UsageError("scenario has no command");
  const auto& registry = command_registry();
  const auto it = registry.find(command);
  if (it == registry.end()) throw UsageError("unknown command: " + command);

  std::string json_out = inv.json_out, csv_out = inv.csv_out;
  if (scenario.contains("outputs")) {
    const Params outputs(scenario["outputs"], "outputs");
    if (json_out.empty()) json_out = outputs.text("json", "");
    if (csv_out.empty()) csv_out = outputs.text("csv", "");
  }
  Json params = scenario;
  params.erase("command");
  params.erase("outputs");

  CommandResult result = it->second(Params(params));
  if (!csv_out.empty() && !result.csv) throw ValidationError("outputs.csv", command + " produces no CSV artifact");

  const Json report = {{"command", command}, {"version", kVersion}, {"params", params}, {"result", result.result}};
  const std::string text = canonical_dump(report) + "\n";
  std::vector<Artifact> artifacts;
  if (!json_out.empty()) artifacts.push_back({json_out, text});
  if (!csv_out.empty()) artifacts.push_back({csv_out, render_csv(*result.csv, command, params)});
  write_atomically(artifacts);
  out << text;
  return kOk;
}

int report_error(std::ostream& err, int code, const std::string& kind, const std::string& message,
                 const std::string& command, Json extra = Json::object()) {
  Json e = {{"exit_code", code}, {"kind", kind}, {"message", message}};
  if (!command.empty()) e["command"] = command;
  e.update(extra);
  err << canonical_dump({{"error", e}}) << "\n";
  return code;
}

}  // namespace

int run_app(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"hsc: ultradifferentiable weights, jets, diffeomorphism groups and Hunter-Saxton geodesics"};
  app.set_version_flag("--version", std::string("hsc ") + kVersion);
  app.require_subcommand(1);
  Invocation inv;

  auto* run = app.add_subcommand("run", "Run a scenario file (its \"command\" field selects the operation)");
  run->add_option("scenario", inv.scenario_path, "Scenario JSON")->required();
  run->add_option("--params", inv.params_text, "JSON object merged over the scenario");
  run->add_option("--json-out", inv.json_out, "Write the JSON report here");
  run->add_option("--csv-out", inv.csv_out, "Write the CSV artifact here");

  std::map<std::string, CLI::App*> modules;
  std::vector<std::pair<CLI::App*, std::string>> ops;
  for (const auto& [tag, fn] : command_registry()) {
    const auto dot = tag.find('.');
    const auto module = tag.substr(0, dot), op = tag.substr(dot + 1);
    auto*& m = modules[module];
    if (!m) {
      m = app.add_subcommand(module, module + " operations");
      m->require_subcommand(1);
    }
    auto* sub = m->add_subcommand(op, tag);
    sub->add_option("scenario", inv.scenario_path, "Scenario JSON (optional)");
    sub->add_option("--params", inv.params_text, "JSON object merged over the scenario");
    sub->add_option("--json-out", inv.json_out, "Write the JSON report here");
    sub->add_option("--csv-out", inv.csv_out, "Write the CSV artifact here");
    ops.emplace_back(sub, tag);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << "hsc " << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    return report_error(err, kUsage, "usage", e.what(), "");
  }
  for (const auto& [sub, tag] : ops)
    if (sub->parsed()) inv.command = tag;

  try {
    return execute(inv, out);
  } catch (const UsageError& e) {
    return report_error(err, kUsage, "usage", e.what(), inv.command);
  } catch (const MalformedError& e) {
    return report_error(err, kMalformed, "malformed_json", e.what(), inv.command);
  } catch (const IoError& e) {
    return report_error(err, kIo, "io", e.what(), inv.command);
  } catch (const ValidationError& e) {
    return report_error(err, kInvariant, "validation", e.what(), inv.command, {{"field", e.field}});
  } catch (const Error& e) {
    if (e.is_invariant_failure())
      return report_error(err, kInvariant, "invariant", e.what(), inv.command, {{"invariant", e.invariant()}});
    return report_error(err, kDomain, to_string(e.kind()), e.what(), inv.command);
  } catch (const Json::exception& e) {
    return report_error(err, kInvariant, "validation", e.what(), inv.command);
  } catch (const std::exception& e) {
    return report_error(err, kDomain, "domain", e.what(), inv.command);
  }
}

}  // namespace hsc::cli
