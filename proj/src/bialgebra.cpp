#include "plie/bialgebra.hpp"

namespace plie {

MatrixXd LieBialgebraData::delta(const VectorXd& x) const {
  const int n = dim();
  if (x.size() != n) throw DimError("delta: dimension mismatch");
  MatrixXd m = MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) m(j, k) += x(i) * f(j, k, i);
  return m;
}

double LieBialgebraData::cocycle_residual(std::array<int, 4>* worst) const {
  const int n = dim();
  double r = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const VectorXd ei = VectorXd::Unit(n, i), ej = VectorXd::Unit(n, j);
      const MatrixXd adi = g.ad(ei), adj = g.ad(ej);
      // ad_X acting on a bivector B (as a matrix): ad_X B + B ad_X^T
      const MatrixXd di = delta(ei), dj = delta(ej);
      const MatrixXd lhs = delta(g.bracket(ei, ej));
      const MatrixXd rhs = adi * dj + dj * adi.transpose() - adj * di - di * adj.transpose();
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const double v = std::abs(lhs(a, b) - rhs(a, b));
          if (v > r) {
            r = v;
            if (worst) *worst = {i, j, a, b};
          }
        }
    }
  return r;
}

LieBialgebraData dual_bialgebra(const LieBialgebraData& b) { return {b.gstar, b.g}; }

DoubleAlgebra::DoubleAlgebra(const LieBialgebraData& b) {
  const int n = b.dim();
  if (b.gstar.dim() != n) throw DimError("bialgebra factors of unequal dimension");
  std::vector<std::string> labels = b.g.labels();
  for (const auto& l : b.gstar.labels()) labels.push_back(l);
  d_ = LieAlgebraData(2 * n, labels);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        d_.set(i, j, k, b.g.c(i, j, k));
        d_.set(n + i, n + j, n + k, b.f(i, j, k));
      }
  // [e_i, eps^j] = -sum_k c^j_{ik} eps^k + sum_k f^{jk}_i e_k
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double to_eps = -b.g.c(i, k, j);
        const double to_e = b.f(j, k, i);
        d_.set(i, n + j, n + k, to_eps);
        d_.set(n + j, i, n + k, -to_eps);
        d_.set(i, n + j, k, to_e);
        d_.set(n + j, i, k, -to_e);
      }
}

MatrixXd DoubleAlgebra::pairing() const {
  const int n = dim() / 2;
  MatrixXd p = MatrixXd::Zero(2 * n, 2 * n);
  p.topRightCorner(n, n).setIdentity();
  p.bottomLeftCorner(n, n).setIdentity();
  return p;
}

double DoubleAlgebra::pairing_invariance_residual() const {
  const MatrixXd p = pairing();
  double r = 0.0;
  for (int z = 0; z < dim(); ++z) {
    const MatrixXd adz = d_.ad(VectorXd::Unit(dim(), z));
    r = std::max(r, (adz.transpose() * p + p * adz).cwiseAbs().maxCoeff());
  }
  return r;
}

double DoubleAlgebra::isotropy_residual() const {
  const int n = dim() / 2;
  const MatrixXd p = pairing();
  return std::max(p.topLeftCorner(n, n).cwiseAbs().maxCoeff(),
                  p.bottomRightCorner(n, n).cwiseAbs().maxCoeff());
}

}  // namespace plie
