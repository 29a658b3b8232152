#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plie/report.hpp"
#include "plie/scenario.hpp"

namespace plie {

enum class Suite { verify_bialgebra, verify_poisson_lie, verify_momentum, verify_induction, induce_orbit, point_induction };

Suite suite_from_string(const std::string& s);
std::string to_string(Suite s);
std::vector<Suite> all_suites();
/// The suites that run before s, in order.
std::vector<Suite> prerequisites(Suite s);

struct SuiteOptions {
  /// Overrides on top of the scenario file, applied in order: environment profile, then CLI.
  std::map<std::string, double> env_tolerances;
  std::map<std::string, double> cli_tolerances;
  std::optional<std::uint64_t> seed;
  /// Promotes RankUnstable warnings to failing checks.
  bool strict = false;
  /// Fill wall_ms; off by default so that reports are byte-stable.
  bool timing = false;
};

/// Tolerances in force: defaults < scenario file < environment < CLI.
ToleranceConfig resolve_tolerances(const ScenarioSpec& spec, const SuiteOptions& opts);

/// Runs the prerequisites of s and then s. A failing prerequisite stops the run and the
/// partial report is returned. Throws ParseError when a required block is missing.
VerificationReport run_suite(const ScenarioSpec& spec, Suite s, const SuiteOptions& opts = {});

/// The checks of s alone, without its prerequisites.
VerificationReport run_suite_only(const ScenarioSpec& spec, Suite s, const SuiteOptions& opts = {});

}  // namespace plie
