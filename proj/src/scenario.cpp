#include "plie/scenario.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace plie {

using nlohmann::json;

namespace {

const json& block(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError("missing block '" + key + "' in " + where);
  return j.at(key);
}

MatrixXd matrix(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw ParseError(what + " must be a nested array");
  const auto rows = j.size(), cols = j[0].size();
  MatrixXd m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (j[r].size() != cols) throw ParseError(what + ": ragged row " + std::to_string(r));
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
  }
  return m;
}

VectorXd vector(const json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + " must be an array");
  VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = j[i].get<double>();
  return v;
}

std::vector<MatrixXd> matrices(const json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + " must be an array of matrices");
  std::vector<MatrixXd> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(matrix(j[i], what + "[" + std::to_string(i) + "]"));
  return out;
}

std::string tuple(std::initializer_list<int> idx) {
  std::string s = "(";
  for (int i : idx) s += (s.size() > 1 ? ", " : "") + std::to_string(i);
  return s + ")";
}

LieAlgebraData constants(const json& j, int n, std::vector<std::string> labels, const std::string& what) {
  LieAlgebraData alg(n, std::move(labels));
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 4) throw ParseError(what + " entries must be [i, j, k, value]");
    const int a = e[0].get<int>(), b = e[1].get<int>(), c = e[2].get<int>();
    if (a < 0 || b < 0 || c < 0 || a >= n || b >= n || c >= n)
      throw ParseError(what + ": index out of range at " + tuple({a, b, c}));
    alg.set(a, b, c, e[3].get<double>());
  }
  return alg;
}

void check_algebra(const LieAlgebraData& alg, const std::string& what) {
  std::array<int, 3> w3{};
  if (alg.antisymmetry_residual(&w3) > 1e-12)
    throw InvariantFailure("antisymmetry of " + what + " constants fails at " + tuple({w3[0], w3[1], w3[2]}));
  std::array<int, 4> w4{};
  if (alg.jacobi_residual(&w4) > 1e-12)
    throw InvariantFailure("Jacobi identity of " + what + " fails at " + tuple({w4[0], w4[1], w4[2], w4[3]}));
}

std::vector<std::string> labels(const json& j, const std::string& key) {
  std::vector<std::string> out;
  if (j.contains(key))
    for (const auto& s : j.at(key)) out.push_back(s.get<std::string>());
  return out;
}

GroupPtr group(const json& j, const std::string& name, const LieAlgebraData& alg) {
  const json& g = block(j, name, "groups");
  auto basis = matrices(block(g, "basis", "groups." + name), name + ".basis");
  if (static_cast<int>(basis.size()) != alg.dim())
    throw InvariantFailure(name + " basis has " + std::to_string(basis.size()) + " matrices for dimension " +
                           std::to_string(alg.dim()));
  auto kind = membership_kind_from_string(block(g, "membership", "groups." + name).get<std::string>());
  auto out = std::make_shared<MatrixGroupModel>(name, alg, std::move(basis), kind);
  if (out->commutator_residual() > 1e-10)
    throw InvariantFailure("embedded " + name + " basis does not realize the structure constants");
  return out;
}

ScenarioSpec build(const json& root) {
  ScenarioSpec s;
  s.name = block(root, "name", "scenario").get<std::string>();
  if (root.contains("flags"))
    for (const auto& [k, v] : root.at("flags").items()) s.flags[k] = v.get<bool>();

  const json& bj = block(root, "bialgebra", "scenario");
  const int n = block(bj, "dim", "bialgebra").get<int>();
  if (n <= 0) throw ParseError("bialgebra.dim must be positive");
  s.bialgebra.g = constants(block(bj, "g_constants", "bialgebra"), n, labels(bj, "g_labels"), "g");
  s.bialgebra.gstar = constants(block(bj, "gstar_constants", "bialgebra"), n, labels(bj, "gstar_labels"), "g*");
  check_algebra(s.bialgebra.g, "g");
  check_algebra(s.bialgebra.gstar, "g*");
  std::array<int, 4> w4{};
  if (s.bialgebra.cocycle_residual(&w4) > 1e-12)
    throw InvariantFailure("cocycle condition fails at " + tuple({w4[0], w4[1], w4[2], w4[3]}));
  const DoubleAlgebra da(s.bialgebra);
  if (da.jacobi_residual() > 1e-12) throw InvariantFailure("Jacobi identity of the double fails");
  if (da.pairing_invariance_residual() > 1e-12) throw InvariantFailure("ad-invariance of the pairing fails");

  const json& gj = block(root, "groups", "scenario");
  const GroupPtr g = group(gj, "G", s.bialgebra.g);
  const GroupPtr u = group(gj, "Gstar", s.bialgebra.gstar);
  const auto dkind = membership_kind_from_string(
      block(block(gj, "D", "groups"), "membership", "groups.D").get<std::string>());
  const json& fj = block(root, "factorization", "scenario");
  const std::string mode = block(fj, "mode", "factorization").get<std::string>();
  if (mode != "closed_form" && mode != "newton") throw ParseError("factorization.mode must be closed_form or newton");
  auto d = std::make_shared<DoubleGroupModel>(
      s.bialgebra, g, u, dkind, mode == "newton" ? FactorizationMode::newton : FactorizationMode::closed_form,
      fj.value("closed_form", std::string()));
  if (d->double_commutator_residual() > 1e-10)
    throw InvariantFailure("embedded D basis does not realize the double bracket");
  s.d = d;

  if (root.contains("subgroup")) {
    const json& sj = root.at("subgroup");
    std::vector<std::pair<int, int>> slice;
    for (const auto& e : block(sj, "gauge_slice", "subgroup")) slice.emplace_back(e[0].get<int>(), e[1].get<int>());
    s.sub = make_subgroup(*d, matrix(block(sj, "inclusion", "subgroup"), "subgroup.inclusion"),
                          matrices(block(sj, "hstar_basis", "subgroup"), "subgroup.hstar_basis"),
                          membership_kind_from_string(block(sj, "hstar_membership", "subgroup").get<std::string>()),
                          block(sj, "istar_rows", "subgroup").get<std::vector<int>>(),
                          block(sj, "istar_cols", "subgroup").get<std::vector<int>>(),
                          matrix(block(sj, "hcirc_basis", "subgroup"), "subgroup.hcirc_basis"), std::move(slice));
    if (s.sub->Hstar->commutator_residual() > 1e-10)
      throw InvariantFailure("embedded H* basis is not abelian");
  }

  if (root.contains("induction")) {
    const json& pj = block(root.at("induction"), "P", "induction");
    InductionSpec ind;
    ind.kind = block(pj, "kind", "induction.P").get<std::string>();
    if (ind.kind == "affine_symplectic") {
      ind.poisson = matrix(block(pj, "poisson", "induction.P"), "induction.P.poisson");
      for (const auto& gen : block(pj, "generators", "induction.P")) {
        ind.a.push_back(matrix(block(gen, "A", "induction.P.generators"), "generator A"));
        ind.b.push_back(vector(block(gen, "b", "induction.P.generators"), "generator b"));
      }
      ind.offset = vector(block(pj, "offset", "induction.P"), "induction.P.offset");
      ind.base = vector(block(pj, "base", "induction.P"), "induction.P.base");
    } else if (ind.kind == "point") {
      ind.momentum = vector(block(pj, "momentum", "induction.P"), "induction.P.momentum");
    } else {
      throw ParseError("induction.P.kind must be affine_symplectic or point");
    }
    s.induction = std::move(ind);
  }

  if (root.contains("point_induction")) {
    const json& ej = root.at("point_induction");
    s.point_induction = PointInductionSpec{vector(block(ej, "u0", "point_induction"), "point_induction.u0"),
                              matrix(block(ej, "section", "point_induction"), "point_induction.section")};
  }
  if (root.contains("orbit_induction")) s.orbit_w = vector(block(root.at("orbit_induction"), "w", "orbit_induction"), "orbit_induction.w");

  const json& pj = block(root, "samples", "scenario");
  for (const auto& [k, v] : pj.items()) {
    if (k == "seed") s.samples.seed = v.get<std::uint64_t>();
    else if (k == "box") s.samples.box = v.get<double>();
    else s.samples.counts[k] = v.get<int>();
  }
  if (root.contains("tolerances"))
    for (const auto& [k, v] : root.at("tolerances").items()) s.tolerances[k] = v.get<double>();
  return s;
}

}  // namespace

MomentumMapModel InductionSpec::build(const SubgroupData& sub) const {
  if (kind == "point") return point_hamiltonian(sub, sub.Hstar->exp(momentum));
  return affine_hamiltonian(sub, poisson, a, b, offset);
}

int SamplePlan::count(const std::string& key) const {
  auto it = counts.find(key);
  if (it == counts.end()) throw ParseError("samples block has no count '" + key + "'");
  return it->second;
}

const SubgroupData& ScenarioSpec::require_subgroup() const {
  if (!sub) throw ParseError("missing block 'subgroup' in scenario " + name);
  return *sub;
}

const InductionSpec& ScenarioSpec::require_induction() const {
  if (!induction) throw ParseError("missing block 'induction' in scenario " + name);
  return *induction;
}

const PointInductionSpec& ScenarioSpec::require_point_induction() const {
  if (!point_induction) throw ParseError("missing block 'point_induction' in scenario " + name);
  return *point_induction;
}

const VectorXd& ScenarioSpec::require_orbit_induction() const {
  if (!orbit_w) throw ParseError("missing block 'orbit_induction' in scenario " + name);
  return *orbit_w;
}

ScenarioSpec parse_scenario(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(origin + ": " + e.what());
  }
  try {
    return build(root);
  } catch (const json::exception& e) {
    throw ParseError(origin + ": " + e.what());
  } catch (const DimError& e) {
    throw InvariantFailure(origin + ": " + e.what());
  }
}

ScenarioSpec load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path);
}

void apply_tolerances(ToleranceConfig& cfg, const std::map<std::string, double>& overrides) {
  for (const auto& [k, v] : overrides) {
    if (k == "fd_step") cfg.fd_step = v;
    else if (k == "newton_tol") cfg.newton_tol = v;
    else if (k == "newton_max_iter") cfg.newton_max_iter = static_cast<int>(v);
    else if (k == "residual_pass") cfg.residual_pass = v;
    else if (k == "nested_step") cfg.nested_step = v;
    else if (k == "seed") cfg.seed = static_cast<std::uint64_t>(v);
    else throw ConfigError("unknown tolerance key '" + k + "'");
  }
  cfg.validate();
}

std::map<std::string, double> parse_tolerance_profile(const std::string& text_or_path) {
  std::string text = text_or_path;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  if (text[first] != '{') {
    std::ifstream in(text_or_path);
    if (!in) throw ConfigError("cannot open tolerance profile " + text_or_path);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  std::map<std::string, double> out;
  try {
    const json j = json::parse(text);
    for (const auto& [k, v] : j.items()) out[k] = v.get<double>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("tolerance profile: ") + e.what());
  }
  return out;
}

}  // namespace plie
