#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace plie {

struct CheckRecord {
  std::string id;
  std::string anchor;
  int samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;

  bool operator==(const CheckRecord&) const = default;
};

struct VerificationReport {
  std::string scenario;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;
  std::int64_t wall_ms = 0;

  bool all_pass() const;
  bool operator==(const VerificationReport&) const = default;
};

enum class ReportFormat { json, text };

ReportFormat report_format_from_string(const std::string& s);
std::string format_report(const VerificationReport& r, ReportFormat f);
/// Writes the formatted report to path; "-" means stdout. Throws Error on IO failure.
void emit_report(const VerificationReport& r, ReportFormat f, const std::string& path);
/// Inverse of format_report(r, json). Throws ParseError.
VerificationReport parse_report(const std::string& json_text);

}  // namespace plie
