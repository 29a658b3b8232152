#include "plie/lie_algebra.hpp"

namespace plie {

LieAlgebraData::LieAlgebraData(int dim, std::vector<std::string> labels)
    : n_(dim), labels_(std::move(labels)), c_(static_cast<std::size_t>(dim) * dim * dim, 0.0) {
  if (dim < 0) throw DimError("negative algebra dimension");
  if (labels_.empty())
    for (int i = 0; i < dim; ++i) labels_.push_back("e" + std::to_string(i + 1));
  if (static_cast<int>(labels_.size()) != dim) throw DimError("label count differs from dim");
}

VectorXd LieAlgebraData::bracket(const VectorXd& x, const VectorXd& y) const {
  if (x.size() != n_ || y.size() != n_) throw DimError("bracket: dimension mismatch");
  VectorXd out = VectorXd::Zero(n_);
  for (int i = 0; i < n_; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < n_; ++j) {
      const double xy = x(i) * y(j);
      if (xy == 0.0) continue;
      for (int k = 0; k < n_; ++k) out(k) += c(i, j, k) * xy;
    }
  }
  return out;
}

MatrixXd LieAlgebraData::ad(const VectorXd& x) const {
  if (x.size() != n_) throw DimError("ad: dimension mismatch");
  MatrixXd m = MatrixXd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k) m(k, j) += x(i) * c(i, j, k);
  return m;
}

bool LieAlgebraData::is_abelian() const {
  for (double v : c_)
    if (v != 0.0) return false;
  return true;
}

double LieAlgebraData::antisymmetry_residual(std::array<int, 3>* worst) const {
  double r = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k) {
        const double v = std::abs(c(i, j, k) + c(j, i, k));
        if (v > r) {
          r = v;
          if (worst) *worst = {i, j, k};
        }
      }
  return r;
}

double LieAlgebraData::jacobi_residual(std::array<int, 4>* worst) const {
  double r = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        for (int l = 0; l < n_; ++l) {
          double s = 0.0;
          for (int m = 0; m < n_; ++m)
            s += c(i, j, m) * c(m, k, l) + c(j, k, m) * c(m, i, l) + c(k, i, m) * c(m, j, l);
          if (std::abs(s) > r) {
            r = std::abs(s);
            if (worst) *worst = {i, j, k, l};
          }
        }
  return r;
}

MatrixXd realify(const Eigen::MatrixXcd& c) {
  const auto m = c.rows();
  MatrixXd r(2 * m, 2 * m);
  r << c.real(), -c.imag(), c.imag(), c.real();
  return r;
}

Eigen::MatrixXcd complexify(const MatrixXd& m) {
  if (m.rows() % 2 != 0 || m.rows() != m.cols()) throw DimError("complexify: odd or non-square");
  const auto h = m.rows() / 2;
  Eigen::MatrixXcd c(h, h);
  c.real() = m.topLeftCorner(h, h);
  c.imag() = m.bottomLeftCorner(h, h);
  return c;
}

double realform_residual(const MatrixXd& m) {
  if (m.rows() % 2 != 0 || m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  const auto h = m.rows() / 2;
  const double a = (m.topLeftCorner(h, h) - m.bottomRightCorner(h, h)).cwiseAbs().maxCoeff();
  const double b = (m.topRightCorner(h, h) + m.bottomLeftCorner(h, h)).cwiseAbs().maxCoeff();
  return std::max(a, b);
}

}  // namespace plie
