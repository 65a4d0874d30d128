#include "minfib/report.hpp"

namespace minfib {

void VerificationReport::add(CheckRecord record) {
  overall_pass = overall_pass && record.pass;
  checks.push_back(std::move(record));
}

Json VerificationReport::to_json() const {
  Json j;
  j["tool"] = Json{{"name", kToolName}, {"version", kToolVersion}};
  j["command"] = command;
  j["config"] = config_echo;
  Json records = Json::array();
  for (const auto& c : checks) {
    Json r;
    r["name"] = c.name;
    r["points_used"] = c.points_used;
    r["max_residual"] = c.max_residual;
    r["tolerance"] = c.tolerance;
    r["pass"] = c.pass;
    if (!c.details.is_null()) r["details"] = c.details;
    records.push_back(r);
  }
  j["checks"] = records;
  j["overall_pass"] = overall_pass;
  return j;
}

std::string VerificationReport::to_string() const {
  return to_json().dump(2) + "\n";
}

std::string validate_report_json(const Json& report) {
  auto fail = [](const std::string& msg) { return msg; };
  if (!report.is_object()) return fail("report: not an object");
  for (const char* key : {"tool", "command", "config", "checks", "overall_pass"})
    if (!report.contains(key))
      return fail(std::string("report: missing key '") + key + "'");
  const auto& tool = report.at("tool");
  if (!tool.is_object() || !tool.contains("name") || !tool.contains("version"))
    return fail("report.tool: need name and version");
  if (!report.at("command").is_string()) return fail("report.command: not a string");
  if (!report.at("overall_pass").is_boolean())
    return fail("report.overall_pass: not a boolean");
  if (!report.at("checks").is_array()) return fail("report.checks: not an array");
  bool all = true;
  for (const auto& c : report.at("checks")) {
    if (!c.is_object()) return fail("check record: not an object");
    for (const char* key :
         {"name", "points_used", "max_residual", "tolerance", "pass"})
      if (!c.contains(key))
        return fail(std::string("check record: missing key '") + key + "'");
    if (!c.at("name").is_string()) return fail("check.name: not a string");
    if (!c.at("points_used").is_number_integer())
      return fail("check.points_used: not an integer");
    if (!c.at("max_residual").is_number())
      return fail("check.max_residual: not a number");
    if (!c.at("tolerance").is_number())
      return fail("check.tolerance: not a number");
    if (!c.at("pass").is_boolean()) return fail("check.pass: not a boolean");
    all = all && c.at("pass").get<bool>();
  }
  if (all != report.at("overall_pass").get<bool>())
    return fail("report.overall_pass: inconsistent with per-check flags");
  return "";
}

}  // namespace minfib
