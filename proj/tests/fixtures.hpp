#pragma once

#include <complex>
#include <memory>

#include "plie/double_group.hpp"
#include "plie/momentum.hpp"
#include "plie/poisson.hpp"

namespace fixtures {

using namespace plie;
using cd = std::complex<double>;

// su(2) from Pauli matrices, e_k = -(i/2) sigma_k, realified.
inline std::vector<MatrixXd> su2_basis() {
  Eigen::Matrix2cd s1, s2, s3;
  s1 << 0, 1, 1, 0;
  s2 << 0, cd(0, -1), cd(0, 1), 0;
  s3 << 1, 0, 0, -1;
  const cd f(0, -0.5);
  return {realify(f * s1), realify(f * s2), realify(f * s3)};
}

inline std::vector<MatrixXd> sb2_basis() {
  Eigen::Matrix2cd a, b, c;
  a << 0, -2, 0, 0;
  b << 0, cd(0, 2), 0, 0;
  c << -1, 0, 0, 1;
  return {realify(a), realify(b), realify(c)};
}

// Structure constants read off the matrices by least squares.
inline LieAlgebraData constants_of(const std::vector<MatrixXd>& basis) {
  const int n = static_cast<int>(basis.size());
  MatrixXd cols(basis[0].size(), n);
  for (int i = 0; i < n; ++i) cols.col(i) = Eigen::Map<const VectorXd>(basis[i].data(), basis[i].size());
  LieAlgebraData alg(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const MatrixXd c = basis[i] * basis[j] - basis[j] * basis[i];
      const VectorXd x = cols.colPivHouseholderQr().solve(Eigen::Map<const VectorXd>(c.data(), c.size()));
      for (int k = 0; k < n; ++k) alg.set(i, j, k, std::abs(x(k)) < 1e-13 ? 0.0 : x(k));
    }
  return alg;
}

inline std::shared_ptr<DoubleGroupModel> su2_double() {
  LieBialgebraData b{constants_of(su2_basis()), constants_of(sb2_basis())};
  auto g = std::make_shared<MatrixGroupModel>("SU2", b.g, su2_basis(), MembershipKind::complex_special_unitary);
  auto u = std::make_shared<MatrixGroupModel>("SB2C", b.gstar, sb2_basis(),
                                              MembershipKind::complex_upper_triangular_positive);
  return std::make_shared<DoubleGroupModel>(b, g, u, MembershipKind::complex_special_linear,
                                            FactorizationMode::closed_form, "iwasawa_complex");
}

// SE(2) acting on its dual: G block = coadjoint representation, G* = translations of the last column.
inline std::shared_ptr<DoubleGroupModel> se2_double() {
  LieAlgebraData c(3);
  c.set(0, 1, 2, 1.0);
  c.set(1, 0, 2, -1.0);
  c.set(0, 2, 1, -1.0);
  c.set(2, 0, 1, 1.0);
  std::vector<MatrixXd> gb, ub;
  for (int i = 0; i < 3; ++i) {
    MatrixXd m = MatrixXd::Zero(4, 4);
    m.topLeftCorner(3, 3) = -c.ad(VectorXd::Unit(3, i)).transpose();
    gb.push_back(m);
    MatrixXd e = MatrixXd::Zero(4, 4);
    e(i, 3) = 1.0;
    ub.push_back(e);
  }
  LieBialgebraData b{c, LieAlgebraData(3)};
  auto g = std::make_shared<MatrixGroupModel>("SE2", b.g, gb, MembershipKind::log_span);
  auto u = std::make_shared<MatrixGroupModel>("se2*", b.gstar, ub, MembershipKind::log_span);
  return std::make_shared<DoubleGroupModel>(b, g, u, MembershipKind::log_span, FactorizationMode::newton);
}

// Poisson-Lie structures of G and G* read off pi_- of the double.
inline PoissonLieGroupModel group_pl(const std::shared_ptr<DoubleGroupModel>& d) {
  return {d->G(), [d](const MatrixXd& g) { return d->bivector_G(g); }, d->bialgebra()};
}

inline PoissonLieGroupModel dual_pl(const std::shared_ptr<DoubleGroupModel>& d) {
  return {d->Gstar(), [d](const MatrixXd& u) { return d->bivector_Gstar(u); },
          dual_bialgebra(d->bialgebra())};
}

// Diagonal torus of SU(2); H* = positive reals read off the (0,0) entry of SB(2,C).
inline SubgroupData torus(const DoubleGroupModel& d) {
  MatrixXd inc = MatrixXd::Zero(3, 1);
  inc(2, 0) = 1.0;
  MatrixXd hc = MatrixXd::Zero(3, 2);
  hc(0, 0) = 1.0;
  hc(1, 1) = 1.0;
  return make_subgroup(d, inc, {MatrixXd::Constant(1, 1, -1.0)}, MembershipKind::positive_scalar, {0}, {0},
                       hc, {{2, 0}});
}

// Translations of SE(2); H* is the lower-right unipotent 3x3 block of the dual.
inline SubgroupData translations(const DoubleGroupModel& d) {
  MatrixXd inc = MatrixXd::Zero(3, 2);
  inc(1, 0) = 1.0;
  inc(2, 1) = 1.0;
  MatrixXd a = MatrixXd::Zero(3, 3), b = MatrixXd::Zero(3, 3);
  a(0, 2) = 1.0;
  b(1, 2) = 1.0;
  return make_subgroup(d, inc, {a, b}, MembershipKind::log_span, {1, 2, 3}, {1, 2, 3},
                       VectorXd::Unit(3, 0), {{0, 1}, {0, 2}});
}

}  // namespace fixtures
