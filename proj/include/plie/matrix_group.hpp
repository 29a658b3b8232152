#pragma once

#include <memory>
#include <string>
#include <vector>

#include "plie/lie_algebra.hpp"

namespace plie {

/// How membership of a matrix in the group is measured.
enum class MembershipKind {
  complex_special_unitary,            // realified SU(m)
  complex_upper_triangular_positive,  // realified upper triangular, positive real diagonal, det 1
  complex_special_linear,             // realified SL(m, C)
  log_span,                           // principal log lies in the embedded algebra
  positive_scalar,                    // 1 x 1 positive reals
};

MembershipKind membership_kind_from_string(const std::string& s);
std::string to_string(MembershipKind k);

enum class Side { left, right };

/// A group element; plain matrices keep Eigen expressions available everywhere.
using GroupPoint = MatrixXd;

/// Matrix Lie group with an embedded basis of its Lie algebra.
class MatrixGroupModel {
 public:
  MatrixGroupModel(std::string name, LieAlgebraData algebra, std::vector<MatrixXd> basis,
                   MembershipKind membership);

  const std::string& name() const { return name_; }
  const LieAlgebraData& algebra() const { return algebra_; }
  int dim() const { return algebra_.dim(); }
  int embed_dim() const { return m_; }
  const std::vector<MatrixXd>& basis() const { return basis_; }
  MembershipKind membership() const { return kind_; }

  GroupPoint identity() const { return MatrixXd::Identity(m_, m_); }

  MatrixXd hat(const VectorXd& x) const;
  /// Basis coordinates of an algebra matrix; NotInAlgebra if the projection
  /// residual exceeds 1e-8.
  VectorXd vee(const MatrixXd& a) const;
  /// Coordinates plus the projection residual, never throws.
  VectorXd vee(const MatrixXd& a, double* residual) const;

  GroupPoint exp(const VectorXd& x) const { return expm(hat(x)); }
  VectorXd log(const GroupPoint& g) const;

  /// Ad(g) as a dim x dim matrix in the embedded basis.
  MatrixXd Ad(const GroupPoint& g) const;
  VectorXd Ad(const GroupPoint& g, const VectorXd& x) const { return Ad(g) * x; }
  /// <Coad(g) xi, X> = <xi, Ad(g^{-1}) X>.
  VectorXd Coad(const GroupPoint& g, const VectorXd& xi) const {
    return Ad(g.inverse()).transpose() * xi;
  }

  /// Left or right invariant 1-form of X in the exp-chart at u (left-trivialized).
  VectorXd invariant_one_form(const VectorXd& x, Side side, const GroupPoint& u) const;

  double membership_residual(const MatrixXd& g) const;
  /// Throws MembershipError when the residual exceeds 1e-8.
  void check_member(const MatrixXd& g, const std::string& what) const;

  /// max |[b_i, b_j] - sum_k c^k_ij b_k| over the embedded basis.
  double commutator_residual() const;

  /// Subgroup generated by combinations of this basis; membership is log_span.
  std::shared_ptr<MatrixGroupModel> subgroup(const std::string& name, const MatrixXd& coeffs) const;

 private:
  std::string name_;
  LieAlgebraData algebra_;
  std::vector<MatrixXd> basis_;
  MembershipKind kind_;
  int m_ = 0;
  MatrixXd basis_cols_;  // m^2 x n
  MatrixXd pinv_;        // n x m^2
};

using GroupPtr = std::shared_ptr<const MatrixGroupModel>;

/// max-abs entry of g^{-1} h - I.
double group_difference(const MatrixXd& g, const MatrixXd& h);

}  // namespace plie
