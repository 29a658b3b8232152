#include "plie/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "json.hpp"
#include "plie/errors.hpp"

namespace plie {

using nlohmann::ordered_json;

namespace {

// Non-finite residuals are written as null and read back as NaN.
ordered_json number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

double read_number(const ordered_json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

}  // namespace

bool VerificationReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

ReportFormat report_format_from_string(const std::string& s) {
  if (s == "json") return ReportFormat::json;
  if (s == "text") return ReportFormat::text;
  throw ConfigError("unknown report format '" + s + "'");
}

std::string format_report(const VerificationReport& r, ReportFormat f) {
  if (f == ReportFormat::json) {
    ordered_json j;
    j["scenario"] = r.scenario;
    j["seed"] = r.seed;
    j["checks"] = ordered_json::array();
    for (const auto& c : r.checks)
      j["checks"].push_back({{"id", c.id},
                             {"anchor", c.anchor},
                             {"samples", c.samples},
                             {"max_residual", number(c.max_residual)},
                             {"tolerance", c.tolerance},
                             {"pass", c.pass}});
    j["wall_ms"] = r.wall_ms;
    return j.dump(2) + "\n";
  }
  std::size_t w = 8;
  for (const auto& c : r.checks) w = std::max(w, c.id.size());
  std::string out = "scenario " + r.scenario + "  seed " + std::to_string(r.seed) + "\n";
  out += pad("check", w) + "  samples  max_residual  tolerance   result\n";
  for (const auto& c : r.checks) {
    std::string n = std::to_string(c.samples);
    out += pad(c.id, w) + "  " + std::string(7 - std::min<std::size_t>(7, n.size()), ' ') + n + "  " +
           pad(sci(c.max_residual), 12) + "  " + pad(sci(c.tolerance), 10) + "  " + (c.pass ? "PASS" : "FAIL") +
           "\n";
  }
  out += std::string(r.all_pass() ? "all checks pass" : "some checks fail") + "  wall_ms " +
         std::to_string(r.wall_ms) + "\n";
  return out;
}

void emit_report(const VerificationReport& r, ReportFormat f, const std::string& path) {
  const std::string text = format_report(r, f);
  if (path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write report to " + path);
  out << text;
  if (!out) throw Error("write failed for " + path);
}

VerificationReport parse_report(const std::string& json_text) {
  try {
    const auto j = ordered_json::parse(json_text);
    VerificationReport r;
    r.scenario = j.at("scenario").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.wall_ms = j.at("wall_ms").get<std::int64_t>();
    for (const auto& c : j.at("checks"))
      r.checks.push_back({c.at("id").get<std::string>(), c.at("anchor").get<std::string>(),
                          c.at("samples").get<int>(), read_number(c.at("max_residual")),
                          c.at("tolerance").get<double>(), c.at("pass").get<bool>()});
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

}  // namespace plie
