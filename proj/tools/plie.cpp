#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "plie/suites.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for Poisson-Lie momentum maps and Poisson induction"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run a verification suite on a scenario file");
  std::string scenario, suite, format = "json", out = "-";
  std::uint64_t seed = 0;
  double fd_step = 0.0;
  bool strict = false, timing = false;
  verify->add_option("scenario", scenario, "scenario JSON file")->required()->check(CLI::ExistingFile);
  verify->add_option("--suite", suite, "verify-bialgebra | verify-poisson-lie | verify-momentum | "
                                       "verify-induction | induce-orbit | point-induction")
      ->required();
  auto* seed_opt = verify->add_option("--seed", seed, "sample seed (default: the scenario's)");
  verify->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  verify->add_option("--out", out, "report path, - for stdout");
  auto* fd_opt = verify->add_option("--fd-step", fd_step, "finite-difference step");
  verify->add_flag("--strict", strict, "treat RankUnstable warnings as failures");
  verify->add_flag("--timing", timing, "record wall-clock time in the report");

  CLI11_PARSE(app, argc, argv);

  try {
    const plie::ScenarioSpec spec = plie::load_scenario(scenario);
    plie::SuiteOptions opts;
    if (const char* env = std::getenv("PLIE_TOLERANCES")) opts.env_tolerances = plie::parse_tolerance_profile(env);
    if (*fd_opt) opts.cli_tolerances["fd_step"] = fd_step;
    if (*seed_opt) opts.seed = seed;
    opts.strict = strict;
    opts.timing = timing;
    const plie::VerificationReport rep = plie::run_suite(spec, plie::suite_from_string(suite), opts);
    plie::emit_report(rep, plie::report_format_from_string(format), out);
    return rep.all_pass() ? 0 : 1;
  } catch (const plie::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
