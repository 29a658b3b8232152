#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "plie/induction.hpp"

namespace plie {

struct InductionSpec {
  std::string kind;  // "affine_symplectic" or "point"
  MatrixXd poisson;
  std::vector<MatrixXd> a;
  std::vector<VectorXd> b;
  VectorXd offset;
  VectorXd base;
  VectorXd momentum;  // point: log of the constant momentum in H*

  MomentumMapModel build(const SubgroupData& sub) const;
};

struct PointInductionSpec {
  VectorXd u0;
  MatrixXd section;
};

struct SamplePlan {
  std::uint64_t seed = 0;
  double box = 0.5;
  std::map<std::string, int> counts;

  int count(const std::string& key) const;
};

/// A loaded scenario with every algebraic invariant already checked.
struct ScenarioSpec {
  std::string name;
  std::map<std::string, bool> flags;
  LieBialgebraData bialgebra;
  std::shared_ptr<const DoubleGroupModel> d;
  std::optional<SubgroupData> sub;
  std::optional<InductionSpec> induction;
  std::optional<PointInductionSpec> point_induction;
  std::optional<VectorXd> orbit_w;
  SamplePlan samples;
  /// Tolerance overrides from the file, as key -> value.
  std::map<std::string, double> tolerances;

  /// Throws ParseError naming the block when it is absent.
  const SubgroupData& require_subgroup() const;
  const InductionSpec& require_induction() const;
  const PointInductionSpec& require_point_induction() const;
  const VectorXd& require_orbit_induction() const;
};

/// Throws ParseError for malformed files and InvariantFailure (naming the invariant and the
/// first failing index tuple) when the algebraic data is inconsistent.
ScenarioSpec load_scenario(const std::string& path);
ScenarioSpec parse_scenario(const std::string& text, const std::string& origin = "<string>");

/// Applies key -> value overrides (fd_step, newton_tol, newton_max_iter, residual_pass,
/// nested_step, seed) to cfg. Unknown keys throw ConfigError.
void apply_tolerances(ToleranceConfig& cfg, const std::map<std::string, double>& overrides);

/// Parses a flat JSON object of tolerance overrides, inline or from a file path.
std::map<std::string, double> parse_tolerance_profile(const std::string& text_or_path);

}  // namespace plie
