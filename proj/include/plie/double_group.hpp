#pragma once

#include <memory>
#include <string>
#include <utility>

#include "plie/bialgebra.hpp"
#include "plie/charts.hpp"

namespace plie {

enum class Order { GU, UG };

enum class DressKind { Gstar_on_G_left, Gstar_on_G_right, G_on_Gstar_left, G_on_Gstar_right };

/// Global dressing of a group K and its dual K* on each other.
///
/// Gstar_on_G_left:  lambda_u(g),   Gstar_on_G_right: rho_u(g)
/// G_on_Gstar_left:  lambda_g(u),   G_on_Gstar_right: rho_g(u)
class DressingProvider {
 public:
  virtual ~DressingProvider() = default;
  virtual MatrixXd dress(const MatrixXd& actor, const MatrixXd& target, DressKind kind,
                         const ToleranceConfig& cfg) const = 0;
};

enum class FactorizationMode { closed_form, newton };

/// D(G) = G . G* realized in a common matrix space.
class DoubleGroupModel : public DressingProvider {
 public:
  DoubleGroupModel(LieBialgebraData bialgebra, GroupPtr g, GroupPtr gstar,
                   MembershipKind d_membership, FactorizationMode mode,
                   std::string closed_form = "");

  const LieBialgebraData& bialgebra() const { return bialgebra_; }
  const GroupPtr& G() const { return g_; }
  const GroupPtr& Gstar() const { return gstar_; }
  const GroupPtr& D() const { return d_; }
  int n() const { return g_->dim(); }
  FactorizationMode mode() const { return mode_; }

  /// GU: (g, u) with g u = d.  UG: (u1, g1) with u1 g1 = d.
  std::pair<MatrixXd, MatrixXd> factorize(const MatrixXd& d, Order order,
                                          const ToleranceConfig& cfg) const;

  MatrixXd dress(const MatrixXd& actor, const MatrixXd& target, DressKind kind,
                 const ToleranceConfig& cfg) const override;

  /// pi_+ or pi_- at d, left-trivialized in the basis (e, eps).
  MatrixXd pi_pm(const MatrixXd& d, int sign) const;
  /// Poisson-Lie structure of G, left-trivialized.
  MatrixXd bivector_G(const MatrixXd& g) const;
  /// Poisson-Lie structure of G*, left-trivialized.
  MatrixXd bivector_Gstar(const MatrixXd& u) const;

  /// max |(commutator of embedded D basis) - (double-algebra constants)|.
  double double_commutator_residual() const { return d_->commutator_residual(); }

 private:
  std::pair<MatrixXd, MatrixXd> iwasawa_gu(const MatrixXd& d) const;
  std::pair<MatrixXd, MatrixXd> newton_factor(const MatrixXd& d, Order order,
                                              const ToleranceConfig& cfg) const;

  LieBialgebraData bialgebra_;
  GroupPtr g_, gstar_, d_;
  FactorizationMode mode_;
  std::string closed_form_;
  MatrixXd p0_;
};

/// pi_0(xi1 + X1, xi2 + X2) = xi1(X2) - xi2(X1); arguments are (xi, X) stacked.
double pi0(const VectorXd& a, const VectorXd& b);
/// [[0, I], [-I, 0]].
MatrixXd pi0_matrix(int n);

struct DoublePoint {
  MatrixXd g, u, d;
  static DoublePoint make(const MatrixXd& g, const MatrixXd& u) { return {g, u, g * u}; }
  double cache_residual() const { return (g * u - d).cwiseAbs().maxCoeff(); }
};

/// (g, u)(h, v) = (g rho_{u^{-1}}(h), lambda_{h^{-1}}(u) v). With cross_check, the
/// result is compared against factorizing the matrix product and a mismatch
/// above 1e-8 throws InvariantViolation.
DoublePoint double_multiply(const DoubleGroupModel& m, const DoublePoint& a, const DoublePoint& b,
                            const ToleranceConfig& cfg, bool cross_check = false);

}  // namespace plie
