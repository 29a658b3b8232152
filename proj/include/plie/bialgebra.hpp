#pragma once

#include "plie/lie_algebra.hpp"

namespace plie {

/// A Lie algebra g with the dual bracket on g*: [eps^j, eps^k] = sum_i f^{jk}_i eps^i.
struct LieBialgebraData {
  LieAlgebraData g;
  LieAlgebraData gstar;  // gstar.c(j, k, i) = f^{jk}_i

  int dim() const { return g.dim(); }
  double f(int j, int k, int i) const { return gstar.c(j, k, i); }

  /// delta(X) as an antisymmetric matrix: delta(X)_{jk} = sum_i X_i f^{jk}_i.
  MatrixXd delta(const VectorXd& x) const;

  /// Residual of delta([X,Y]) = ad_X delta(Y) - ad_Y delta(X) over basis pairs,
  /// with the worst (i, j, row, col).
  double cocycle_residual(std::array<int, 4>* worst = nullptr) const;

  bool operator==(const LieBialgebraData& o) const { return g == o.g && gstar == o.gstar; }
};

/// Swaps the roles of g and g*.
LieBialgebraData dual_bialgebra(const LieBialgebraData& b);

/// The double d = g + g* in the basis (e_1..e_n, eps^1..eps^n).
class DoubleAlgebra {
 public:
  explicit DoubleAlgebra(const LieBialgebraData& b);

  const LieAlgebraData& algebra() const { return d_; }
  int dim() const { return d_.dim(); }

  /// Symmetric pairing matrix [[0, I], [I, 0]].
  MatrixXd pairing() const;
  double jacobi_residual() const { return d_.jacobi_residual(); }
  /// max |<[z,x], y> + <x, [z,y]>| over basis triples.
  double pairing_invariance_residual() const;
  /// Largest entry of the pairing restricted to g or to g* (isotropy).
  double isotropy_residual() const;

 private:
  LieAlgebraData d_;
};

}  // namespace plie
