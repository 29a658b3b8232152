#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "plie/errors.hpp"
#include "plie/numerics.hpp"

namespace plie {

/// A finite-dimensional Lie algebra given by structure constants c^k_{ij}.
class LieAlgebraData {
 public:
  LieAlgebraData() = default;
  explicit LieAlgebraData(int dim, std::vector<std::string> labels = {});

  int dim() const { return n_; }
  const std::vector<std::string>& labels() const { return labels_; }

  double c(int i, int j, int k) const { return c_[index(i, j, k)]; }
  void set(int i, int j, int k, double v) { c_[index(i, j, k)] = v; }

  VectorXd bracket(const VectorXd& x, const VectorXd& y) const;
  /// Matrix of ad_X in the basis: (ad_X)_{kj} = sum_i X_i c^k_{ij}.
  MatrixXd ad(const VectorXd& x) const;

  bool is_abelian() const;

  /// max |c^k_{ij} + c^k_{ji}|, with the worst index triple.
  double antisymmetry_residual(std::array<int, 3>* worst = nullptr) const;
  /// max over (i,j,k,l) of the Jacobi sum, with the worst index tuple.
  double jacobi_residual(std::array<int, 4>* worst = nullptr) const;

  bool operator==(const LieAlgebraData& o) const { return n_ == o.n_ && c_ == o.c_; }

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
  }
  int n_ = 0;
  std::vector<std::string> labels_;
  std::vector<double> c_;
};

/// Matrix exponential: scaling and squaring around a degree-18 Taylor polynomial.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> expm(
    const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using std::abs;
  const auto n = a.rows();
  if (a.cols() != n) throw DimError("expm: matrix is not square");
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  if (norm > 0.25) s = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
  const Mat x = a / static_cast<Scalar>(std::ldexp(1.0, s));
  Mat result = Mat::Identity(n, n);
  Mat term = Mat::Identity(n, n);
  for (int k = 1; k <= 18; ++k) {
    term = (term * x) / static_cast<Scalar>(k);
    result += term;
  }
  for (int i = 0; i < s; ++i) result = result * result;
  return result;
}

namespace detail {

template <typename Mat>
Mat sqrtm_db(const Mat& a) {
  using Scalar = typename Mat::Scalar;
  const auto n = a.rows();
  Mat y = a;
  Mat z = Mat::Identity(n, n);
  for (int it = 0; it < 100; ++it) {
    const Mat yi = y.inverse();
    const Mat zi = z.inverse();
    const Mat yn = (y + zi) * Scalar(0.5);
    const Mat zn = (z + yi) * Scalar(0.5);
    const double change = (yn - y).cwiseAbs().maxCoeff();
    y = yn;
    z = zn;
    if (!std::isfinite(change)) break;
    if (change < 1e-15 * std::max(1.0, y.cwiseAbs().maxCoeff())) return y;
  }
  if (!y.allFinite()) throw LogDomainError("square-root iteration diverged");
  return y;
}

}  // namespace detail

/// Principal matrix logarithm by inverse scaling and squaring.
///
/// Throws LogDomainError when an eigenvalue sits on the closed negative real axis.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> logm(
    const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const auto n = a.rows();
  if (a.cols() != n) throw DimError("logm: matrix is not square");
  Mat x = a;
  if (!x.allFinite()) throw LogDomainError("non-finite matrix");
  const Mat id = Mat::Identity(n, n);

  if ((x - id).cwiseAbs().maxCoeff() > 0.5) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(x.template cast<std::complex<double>>(), false);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto lam = es.eigenvalues()(i);
      if (std::abs(lam.imag()) <= 1e-10 * std::max(1.0, std::abs(lam)) && lam.real() <= 0.0)
        throw LogDomainError("eigenvalue on the closed negative real axis");
    }
  }

  int k = 0;
  while ((x - id).cwiseAbs().colwise().sum().maxCoeff() > 0.05) {
    if (++k > 60) throw LogDomainError("too many square roots");
    x = detail::sqrtm_db(x);
  }
  // log(X) = 2 artanh(Z), Z = (X - I)(X + I)^{-1}
  const Mat z = (x - id) * (x + id).inverse();
  const Mat z2 = z * z;
  Mat term = z;
  Mat sum = z;
  for (int j = 1; j < 40; ++j) {
    term = term * z2;
    const Mat add = term / static_cast<Scalar>(2 * j + 1);
    sum += add;
    if (add.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  return sum * static_cast<Scalar>(2.0 * std::ldexp(1.0, k));
}

/// Real 2m x 2m realization [[P, -Q], [Q, P]] of a complex m x m matrix P + iQ.
MatrixXd realify(const Eigen::MatrixXcd& c);
/// Inverse of realify(); reads the left column block.
Eigen::MatrixXcd complexify(const MatrixXd& m);
/// Distance of a real matrix from the image of realify().
double realform_residual(const MatrixXd& m);

}  // namespace plie
