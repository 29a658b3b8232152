#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "plie/double_group.hpp"
#include "plie/poisson.hpp"

namespace plie {

/// A Poisson-Lie group, its dual carrying the dual structure, and the dressing between them.
struct PoissonLiePair {
  PoissonLieGroupModel group;
  PoissonLieGroupModel dual;
  std::shared_ptr<const DressingProvider> dressing;
};

/// (G, pi_G), (G*, pi_G*) and the dressing of the double.
PoissonLiePair double_pair(const std::shared_ptr<const DoubleGroupModel>& d);

/// Lie-Poisson bivector sum_k c^k_ij mu_k of an algebra, evaluated at mu.
MatrixXd lie_poisson(const LieAlgebraData& alg, const VectorXd& mu);

/// Dressing for a group with zero structure: K* acts trivially on K, and K acts on the
/// additive K* by Coad. K* must be realized so that exp is additive.
class ZeroStructureDressing : public DressingProvider {
 public:
  ZeroStructureDressing(GroupPtr k, GroupPtr kstar) : k_(std::move(k)), kstar_(std::move(kstar)) {}
  MatrixXd dress(const MatrixXd& actor, const MatrixXd& target, DressKind kind,
                 const ToleranceConfig& cfg) const override;

 private:
  GroupPtr k_, kstar_;
};

/// J: P -> K* attached to an action of K on P.
struct MomentumMapModel {
  ActionModel action;
  PoissonLiePair pair;
  std::function<MatrixXd(const Point&)> map;

  PoissonManifoldModel target() const { return pair.dual.manifold(); }
};

/// Differential of J at x, from the chart at x to the chart of K* at J(x).
MatrixXd momentum_differential(const MomentumMapModel& j, const Point& x, const ToleranceConfig& cfg);

/// |sigma(X)(x) - pi#(J* X^l)| for left actions, |sigma(X)(x) + pi#(J* X^r)| for right
/// actions, divided by max(1, |X|).
double momentum_residual(const MomentumMapModel& j, const VectorXd& x_alg, const Point& x,
                         const ToleranceConfig& cfg);

/// J as a Poisson map into K* with its dual structure.
double equivariance_residual(const MomentumMapModel& j, const Point& x, const ToleranceConfig& cfg);

/// sigma~(g, p) = sigma(p, [lambda_{J(p)}(g)]^{-1}), with J re-attached.
MomentumMapModel right_to_left(const MomentumMapModel& right, const ToleranceConfig& cfg);

/// sigma(g, (p1, p2)) = (sigma1(lambda_{J2(p2)}(g), p1), sigma2(g, p2)) and J = J1 J2,
/// on the product space with block-diagonal bivector.
MomentumMapModel product_action(const MomentumMapModel& a, const MomentumMapModel& b,
                                const ToleranceConfig& cfg);

/// A closed subgroup H of G with zero Poisson structure and its dual data.
struct SubgroupData {
  /// i_*: columns are the H basis in G coordinates.
  MatrixXd inclusion;
  GroupPtr H, Hstar;
  /// i*(u) = u(rows, cols).
  std::vector<int> istar_rows, istar_cols;
  /// Algebra of H° as columns in G* coordinates.
  MatrixXd hcirc;
  /// Entries of the GU G-factor pinned to zero by the gauge.
  std::vector<std::pair<int, int>> gauge_slice;
  PoissonLiePair pair;

  int dim() const { return H->dim(); }
  MatrixXd istar(const MatrixXd& u) const;
  /// i* on algebras, g* -> h*.
  MatrixXd istar_algebra() const { return inclusion.transpose(); }
  /// Embedded H element of G.
  MatrixXd embed(const VectorXd& y) const { return H->exp(y); }
};

SubgroupData make_subgroup(const DoubleGroupModel& d, const MatrixXd& inclusion,
                           const std::vector<MatrixXd>& hstar_basis, MembershipKind hstar_membership,
                           std::vector<int> rows, std::vector<int> cols, const MatrixXd& hcirc,
                           std::vector<std::pair<int, int>> gauge_slice);

/// max |i*(uv) - i*(u) i*(v)| and max |i*(exp(hcirc c)) - e| over the sample pair.
double istar_morphism_residual(const SubgroupData& sub, const MatrixXd& u, const MatrixXd& v);
double hcirc_residual(const SubgroupData& sub, const VectorXd& c, const DoubleGroupModel& d);

/// H abelian acting on (R^n, pi) by exp(sum y_a A_a) p + affine part, with
/// J_a(p) = p^T S_a p / 2 + c_a^T p + offset_a, S_a = pi^{-1} A_a, c_a = pi^{-1} b_a.
/// Throws ConfigError when some S_a is not symmetric.
MomentumMapModel affine_hamiltonian(const SubgroupData& sub, const MatrixXd& pi,
                                    const std::vector<MatrixXd>& a, const std::vector<VectorXd>& b,
                                    const VectorXd& offset);

/// A point with the trivial H-action and constant momentum `value` in H*.
MomentumMapModel point_hamiltonian(const SubgroupData& sub, const MatrixXd& value);

/// (D, pi_+) with exp-charts.
PoissonManifoldModel double_symplectic(const std::shared_ptr<const DoubleGroupModel>& d);

/// r_h(d) = d h with J_r(d) = (i*(u))^{-1}, d = g u.
MomentumMapModel canonical_right_action(const std::shared_ptr<const DoubleGroupModel>& d,
                                        const SubgroupData& sub, const ToleranceConfig& cfg);

/// J_l(d) = rho_{g^{-1}}(u) for d = g u.
MatrixXd J_l_formula(const DoubleGroupModel& d, const MatrixXd& x, const ToleranceConfig& cfg);
/// J_l(d) as the G* factor of d = u1 g1.
MatrixXd J_l_projection(const DoubleGroupModel& d, const MatrixXd& x, const ToleranceConfig& cfg);
/// l_k(d) = lambda_{J_l(d)}(k) d.
MatrixXd l_action(const DoubleGroupModel& d, const MatrixXd& k, const MatrixXd& x,
                  const ToleranceConfig& cfg);

MomentumMapModel canonical_left_action(const std::shared_ptr<const DoubleGroupModel>& d,
                                       const ToleranceConfig& cfg);

struct DressingIdentityResiduals {
  double coad_inclusion = 0.0;  // (1)
  double dressing_fields = 0.0;  // (2)
  double double_adjoint = 0.0;   // (3)
};

/// The three identities at one sample (u in G*, Y in h, g in G, xi in g*, X in g).
DressingIdentityResiduals dressing_identity_residuals(const DoubleGroupModel& d, const SubgroupData& sub,
                                   const MatrixXd& u, const VectorXd& y, const MatrixXd& g,
                                   const VectorXd& xi, const VectorXd& x, const ToleranceConfig& cfg);

struct ClassicalLimitReport {
  int samples = 0;
  double right_action = 0.0;   // r_h(g, mu) vs (gh, Coad(h^{-1}) mu)
  double left_action = 0.0;    // l_k(g, mu) vs (kg, mu)
  double right_momentum = 0.0; // J_r vs -i* mu
  double left_momentum = 0.0;  // J_l vs Coad(g) mu
  double max() const {
    return std::max(std::max(right_action, left_action), std::max(right_momentum, left_momentum));
  }
};

/// Compares the canonical actions and momenta of a zero-structure double against the
/// closed forms of the cotangent lift. With flip_coad the oracle uses Ad(g)^T in place
/// of Coad(g) in the left momentum, which must be detected.
ClassicalLimitReport classical_limit_oracle(const DoubleGroupModel& d, const SubgroupData& sub,
                                            SampleStream& rng, int samples, double box,
                                            const ToleranceConfig& cfg, bool flip_coad = false);

}  // namespace plie
