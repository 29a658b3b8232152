#include "plie/matrix_group.hpp"

#include <limits>

namespace plie {

MembershipKind membership_kind_from_string(const std::string& s) {
  if (s == "complex_special_unitary") return MembershipKind::complex_special_unitary;
  if (s == "complex_upper_triangular_positive")
    return MembershipKind::complex_upper_triangular_positive;
  if (s == "complex_special_linear") return MembershipKind::complex_special_linear;
  if (s == "log_span") return MembershipKind::log_span;
  if (s == "positive_scalar") return MembershipKind::positive_scalar;
  throw ParseError("unknown membership kind '" + s + "'");
}

std::string to_string(MembershipKind k) {
  switch (k) {
    case MembershipKind::complex_special_unitary: return "complex_special_unitary";
    case MembershipKind::complex_upper_triangular_positive: return "complex_upper_triangular_positive";
    case MembershipKind::complex_special_linear: return "complex_special_linear";
    case MembershipKind::log_span: return "log_span";
    case MembershipKind::positive_scalar: return "positive_scalar";
  }
  return "?";
}

MatrixGroupModel::MatrixGroupModel(std::string name, LieAlgebraData algebra,
                                   std::vector<MatrixXd> basis, MembershipKind membership)
    : name_(std::move(name)), algebra_(std::move(algebra)), basis_(std::move(basis)),
      kind_(membership) {
  if (static_cast<int>(basis_.size()) != algebra_.dim())
    throw DimError(name_ + ": basis size differs from algebra dimension");
  if (basis_.empty()) throw DimError(name_ + ": empty basis");
  m_ = static_cast<int>(basis_[0].rows());
  basis_cols_.resize(static_cast<Eigen::Index>(m_) * m_, algebra_.dim());
  for (int i = 0; i < algebra_.dim(); ++i) {
    if (basis_[i].rows() != m_ || basis_[i].cols() != m_)
      throw DimError(name_ + ": basis matrices of unequal size");
    basis_cols_.col(i) = Eigen::Map<const VectorXd>(basis_[i].data(), basis_[i].size());
  }
  if (numerical_rank(basis_cols_) != algebra_.dim())
    throw DimError(name_ + ": embedded basis is linearly dependent");
  pinv_ = basis_cols_.completeOrthogonalDecomposition().pseudoInverse();
}

MatrixXd MatrixGroupModel::hat(const VectorXd& x) const {
  if (x.size() != dim()) throw DimError(name_ + ": hat dimension mismatch");
  MatrixXd a = MatrixXd::Zero(m_, m_);
  for (int i = 0; i < dim(); ++i) a += x(i) * basis_[i];
  return a;
}

VectorXd MatrixGroupModel::vee(const MatrixXd& a, double* residual) const {
  if (a.rows() != m_ || a.cols() != m_) throw DimError(name_ + ": vee dimension mismatch");
  const Eigen::Map<const VectorXd> flat(a.data(), a.size());
  VectorXd x = pinv_ * flat;
  if (residual) *residual = (basis_cols_ * x - flat).cwiseAbs().maxCoeff();
  return x;
}

VectorXd MatrixGroupModel::vee(const MatrixXd& a) const {
  double r = 0.0;
  VectorXd x = vee(a, &r);
  if (r > 1e-8 * std::max(1.0, a.cwiseAbs().maxCoeff()))
    throw NotInAlgebra(name_ + ": projection residual " + std::to_string(r));
  return x;
}

VectorXd MatrixGroupModel::log(const GroupPoint& g) const { return vee(logm(g)); }

MatrixXd MatrixGroupModel::Ad(const GroupPoint& g) const {
  const MatrixXd gi = g.inverse();
  MatrixXd a(dim(), dim());
  for (int i = 0; i < dim(); ++i) a.col(i) = vee(g * basis_[i] * gi);
  return a;
}

VectorXd MatrixGroupModel::invariant_one_form(const VectorXd& x, Side side,
                                              const GroupPoint& u) const {
  if (x.size() != dim()) throw DimError(name_ + ": one-form dimension mismatch");
  if (side == Side::left) return x;
  // u exp(tv) = exp(t Ad_u v) u
  return Ad(u).transpose() * x;
}

double MatrixGroupModel::membership_residual(const MatrixXd& g) const {
  if (g.rows() != m_ || g.cols() != m_ || !g.allFinite())
    return std::numeric_limits<double>::infinity();
  switch (kind_) {
    case MembershipKind::complex_special_unitary: {
      const double rf = realform_residual(g);
      const Eigen::MatrixXcd c = complexify(g);
      const auto k = c.rows();
      const double un = (c.adjoint() * c - Eigen::MatrixXcd::Identity(k, k)).cwiseAbs().maxCoeff();
      const double det = std::abs(c.determinant() - 1.0);
      return std::max({rf, un, det});
    }
    case MembershipKind::complex_upper_triangular_positive: {
      const double rf = realform_residual(g);
      const Eigen::MatrixXcd c = complexify(g);
      double r = rf;
      for (Eigen::Index i = 0; i < c.rows(); ++i) {
        for (Eigen::Index j = 0; j < i; ++j) r = std::max(r, std::abs(c(i, j)));
        r = std::max(r, std::abs(c(i, i).imag()));
        if (c(i, i).real() <= 0.0) r = std::max(r, 1.0 - c(i, i).real());
      }
      return std::max(r, std::abs(c.determinant() - 1.0));
    }
    case MembershipKind::complex_special_linear: {
      const double rf = realform_residual(g);
      return std::max(rf, std::abs(complexify(g).determinant() - 1.0));
    }
    case MembershipKind::log_span: {
      try {
        double r = 0.0;
        vee(logm(g), &r);
        return r;
      } catch (const Error&) {
        return std::numeric_limits<double>::infinity();
      }
    }
    case MembershipKind::positive_scalar:
      return g(0, 0) > 0.0 ? 0.0 : 1.0 - g(0, 0);
  }
  return std::numeric_limits<double>::infinity();
}

void MatrixGroupModel::check_member(const MatrixXd& g, const std::string& what) const {
  const double r = membership_residual(g);
  if (!(r < 1e-8))
    throw MembershipError(what + " not in " + name_ + " (residual " + std::to_string(r) + ")");
}

double MatrixGroupModel::commutator_residual() const {
  double r = 0.0;
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) {
      MatrixXd comm = basis_[i] * basis_[j] - basis_[j] * basis_[i];
      for (int k = 0; k < dim(); ++k) comm -= algebra_.c(i, j, k) * basis_[k];
      r = std::max(r, comm.cwiseAbs().maxCoeff());
    }
  return r;
}

std::shared_ptr<MatrixGroupModel> MatrixGroupModel::subgroup(const std::string& name,
                                                             const MatrixXd& coeffs) const {
  if (coeffs.rows() != dim()) throw DimError(name + ": coefficient rows differ from dim");
  const auto k = static_cast<int>(coeffs.cols());
  std::vector<MatrixXd> sb;
  for (int a = 0; a < k; ++a) sb.push_back(hat(coeffs.col(a)));
  // Structure constants of the span, read off through the least-squares coordinates.
  const MatrixXd pinv = coeffs.completeOrthogonalDecomposition().pseudoInverse();
  LieAlgebraData alg(k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      const VectorXd br = algebra_.bracket(coeffs.col(a), coeffs.col(b));
      const VectorXd sub = pinv * br;
      if ((coeffs * sub - br).cwiseAbs().maxCoeff() > 1e-10)
        throw NotInAlgebra(name + ": span is not a subalgebra");
      for (int c = 0; c < k; ++c) alg.set(a, b, c, std::abs(sub(c)) < 1e-14 ? 0.0 : sub(c));
    }
  return std::make_shared<MatrixGroupModel>(name, std::move(alg), std::move(sb),
                                            MembershipKind::log_span);
}

double group_difference(const MatrixXd& g, const MatrixXd& h) {
  return (g.inverse() * h - MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

}  // namespace plie
