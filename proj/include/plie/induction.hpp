#pragma once

#include <memory>
#include <string>
#include <vector>

#include "plie/momentum.hpp"

namespace plie {

/// Level-set data: N = {x : constraint(x) = 0}.
using ConstraintFn = std::function<VectorXd(const Point&)>;

struct SubcharacteristicResult {
  MatrixXd tangent;  // T_x N, orthonormal columns
  MatrixXd basis;    // pi#((T_x N)°) ∩ T_x N
  bool rank_unstable = false;
};

/// Sub-characteristic distribution of N at x, in the chart at x. The constraint Jacobian
/// is differentiated with one Richardson level so that rank decisions sit well below
/// the shared cutoff.
SubcharacteristicResult subcharacteristic_basis(const PoissonManifoldModel& m, const ConstraintFn& n,
                                                const Point& x, const ToleranceConfig& cfg);

struct CleanIntersectionReport {
  std::vector<int> leaf_ranks;         // rank of T N ∩ (leaf tangent) per sample
  std::vector<int> characteristic_ranks;
  bool rank_jump = false;
  bool rank_unstable = false;
};

/// Leaf tangents are taken as the image of pi(x).
CleanIntersectionReport clean_intersection_report(const PoissonManifoldModel& m, const ConstraintFn& n,
                                                  const std::vector<Point>& samples,
                                                  const ToleranceConfig& cfg);

/// P̌ = P x (D, pi_+) with the left H-action sigmǎ and momentum J̌ = J J_r.
struct CheckSpace {
  std::shared_ptr<const DoubleGroupModel> d;
  SubgroupData sub;
  MomentumMapModel P;
  MomentumMapModel right;  // (r, J_r)
  MomentumMapModel check;  // (sigmǎ, J̌)
  std::shared_ptr<const ProductSpace> space;

  int dim() const { return space->dim(); }
  Point p_part(const Point& x) const { return space->factor(x, 0); }
  const MatrixXd& d_part(const Point& x) const { return x.back(); }
  Point make(const Point& p, const MatrixXd& dd) const { return ProductSpace::join(p, group_point(dd)); }
  Point act(const VectorXd& y, const Point& x) const { return check.action.apply(sub.H->exp(y), x); }
};

CheckSpace build_check_space(std::shared_ptr<const DoubleGroupModel> d, const SubgroupData& sub,
                             const MomentumMapModel& p, const ToleranceConfig& cfg);

/// J̌^{-1}(e*) modulo H, represented by gauge-fixed points.
class ConstraintQuotient {
 public:
  ConstraintQuotient(CheckSpace cs, ToleranceConfig cfg) : cs_(std::move(cs)), cfg_(cfg) {}

  const CheckSpace& space() const { return cs_; }
  const ToleranceConfig& config() const { return cfg_; }

  /// log of J̌(x) in H*; zero exactly on the constraint set.
  VectorXd constraint(const Point& x) const;
  /// Minimum-norm chart Newton onto the constraint set. Throws NoConvergence.
  Point project(const Point& x) const;
  /// Slice values: the gauge_slice entries of the GU G-factor of the D-part.
  VectorXd slice(const Point& x) const;
  /// sigmǎ_h(x) on the slice, with h = exp(y) found by Newton from y = 0.
  Point gauge(const Point& x, VectorXd* h_param = nullptr) const;
  Point canonical(const Point& x) const { return gauge(project(x)); }

  /// Least-squares residual of sigmǎ_h(x) = target over h, started at 0.
  double orbit_residual(const Point& x, const Point& target) const;

  /// ľ_k(p, d) = (p, l_k(d)); throws InvariantViolation when J̌ drifts by more than 1e-7.
  Point l_check(const MatrixXd& k, const Point& x) const;
  /// Ľ(p, d) = J_l(d).
  MatrixXd L_check(const Point& x) const;
  /// gauge(ľ_k(x)).
  Point induced_action(const MatrixXd& k, const Point& x) const;

  /// c(y) = local_x0(canonical(retract_x0(y))).
  VectorXd chart_canonical(const Point& x0, const VectorXd& y) const;
  /// Induced bivector Dc pǐ Dc^T at chart point z of x0.
  MatrixXd induced_bivector(const Point& x0, const VectorXd& z) const;
  /// The induced bivector field transported to every chart point through c.
  PoissonManifoldModel induced_chart_manifold(const Point& x0) const;

 private:
  CheckSpace cs_;
  ToleranceConfig cfg_;
};

/// |d/dt F(sigmǎ_{exp tY} x)| over a basis Y of h, divided by max(1, |dF|).
double invariance_residual(const ConstraintQuotient& q, const ScalarFn& f, const Point& x);

/// {F∘canonical, H∘canonical} at a canonical x. Throws NotInvariant when F or H
/// moves along the H-orbit by more than 1e-6.
double induced_bracket(const ConstraintQuotient& q, const ScalarFn& f, const ScalarFn& h,
                       const Point& x);

/// Largest |J_ijk| of the induced bivector field at canonical x, with outer step
/// cfg.nested_step.
double induced_jacobi_residual(const ConstraintQuotient& q, const Point& x);

/// |d/dt c(ľ_{exp tX} x) - T (d(Ľ∘c))^T X| at canonical x, divided by max(1, |X|).
double induced_momentum_residual(const ConstraintQuotient& q, const VectorXd& x_alg, const Point& x);

/// Poisson-action criterion of the induced action against the induced bivector.
double induced_action_residual(const ConstraintQuotient& q, const VectorXd& x_alg, const ScalarFn& f,
                               const ScalarFn& h, const Point& x);

struct CommutationResiduals {
  double jr_under_l = 0.0;   // (1) J_r∘l_k = J_r
  double jl_under_r = 0.0;   // (2) J_l∘r_h = J_l
  double r_l_commute = 0.0;  // (3) r_h∘l_k = l_k∘r_h
  double check_commute = 0.0;  // (4) ľ_k∘sigmǎ_h = sigmǎ_h∘ľ_k
  double max() const {
    return std::max(std::max(jr_under_l, jl_under_r), std::max(r_l_commute, check_commute));
  }
};

/// The four identities at one sample (k in G, h in H, x in P̌ with D-part d).
CommutationResiduals commutation_residuals(const CheckSpace& cs, const MatrixXd& k, const MatrixXd& h,
                                 const Point& x, const ToleranceConfig& cfg);

struct PointInductionReport {
  int samples = 0;
  double dressing_invariance = 0.0;  // u0 fixed by H, s* commuting with dressing at u0
  double section_residual = 0.0;     // |i*(w0) - u0|
  double q_relation = 0.0;           // at the given u0
  double q_relation_identity = 0.0;  // at u0 = e*
  double modification_identity = 0.0;
  double roundtrip = 0.0;
  double constraint = 0.0;           // |J̌| at the constraint points built from the splitting
};

/// Point induction: P a point with momentum u0 = exp(u0c) in H*, s* given on algebras by
/// `section` (columns are images of the h* basis in g* coordinates), w0 = s*(u0).
/// Throws NotDressingInvariant when u0 is not fixed by the dressing of H.
PointInductionReport point_induction_report(std::shared_ptr<const DoubleGroupModel> d, const SubgroupData& sub,
                                        const VectorXd& u0c, const MatrixXd& section, SampleStream& rng,
                                        int samples, double box, const ToleranceConfig& cfg);

struct OrbitInductionReport {
  int samples = 0;
  bool condition_holds = false;
  double condition_residual = 0.0;  // worst least-squares fit of w H° inside H·w
  int condition_failures = 0;
  double membership = 0.0;          // full fibre: worst fit of [p, gu] -> rho_{g^{-1}}(u) inside G·w
  int membership_failures = 0;
  double orbit_membership = 0.0;    // u restricted to H·w
  double sigma_coincidence = 0.0;   // sigmǎ_h(p, gu) vs (p, g h^{-1} rho_{h^{-1}}(u))
  bool classical = false;
  double classical_deviation = 0.0; // zero structure only: J_l(g exp(mu)) vs Coad(g) mu
};

/// Orbit induction through w = exp(wc) in G*, v = i*(w), P = {v}.
OrbitInductionReport orbit_induction_report(std::shared_ptr<const DoubleGroupModel> d, const SubgroupData& sub,
                                        const VectorXd& wc, SampleStream& rng, int samples, double box,
                                        const ToleranceConfig& cfg);

}  // namespace plie
