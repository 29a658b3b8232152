#include "doctest.h"

#include "fixtures.hpp"

using namespace plie;

TEST_CASE("double algebra invariants for both fixtures") {
  for (auto d : {fixtures::su2_double(), fixtures::se2_double()}) {
    const auto& b = d->bialgebra();
    CHECK(b.cocycle_residual() < 1e-12);
    DoubleAlgebra da(b);
    CHECK(da.jacobi_residual() < 1e-12);
    CHECK(da.pairing_invariance_residual() < 1e-12);
    CHECK(da.isotropy_residual() == 0.0);
    // The embedded D basis realizes exactly the bracket built from (c, f).
    CHECK(d->double_commutator_residual() < 1e-12);
  }
}

TEST_CASE("a broken cocycle is detected") {
  auto d = fixtures::su2_double();
  LieBialgebraData b = d->bialgebra();
  b.gstar.set(0, 2, 0, 3.0);
  b.gstar.set(2, 0, 0, -3.0);
  CHECK(b.cocycle_residual() > 1e-3);
}

TEST_CASE("dual bialgebra") {
  auto d = fixtures::su2_double();
  const auto& b = d->bialgebra();
  CHECK(dual_bialgebra(dual_bialgebra(b)) == b);
  const auto dual = dual_bialgebra(b);
  CHECK(dual.cocycle_residual() < 1e-12);
  CHECK(DoubleAlgebra(dual).jacobi_residual() < 1e-12);
  CHECK(dual_bialgebra(fixtures::se2_double()->bialgebra()).g.is_abelian());
}

TEST_CASE("pi0 values") {
  VectorXd a = VectorXd::Zero(6), b = VectorXd::Zero(6);
  a(0) = 1.0;  // eps^1
  b(3) = 1.0;  // e_1
  CHECK(pi0(a, b) == 1.0);
  CHECK(pi0(a, a) == 0.0);
  VectorXd c = VectorXd::Zero(6);
  c(1) = 1.0;
  CHECK(pi0(a, c) == 0.0);
  SampleStream rng(1);
  const VectorXd x = rng.box(6, 1.0), y = rng.box(6, 1.0);
  CHECK(std::abs(pi0(x, y) - x.dot(pi0_matrix(3) * y)) < 1e-15);
}

TEST_CASE("factorization roundtrips") {
  ToleranceConfig cfg;
  for (auto d : {fixtures::su2_double(), fixtures::se2_double()}) {
    SampleStream rng(23);
    const MatrixXd e = d->D()->identity();
    auto [g0, u0] = d->factorize(e, Order::GU, cfg);
    CHECK((g0 - e).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((u0 - e).cwiseAbs().maxCoeff() < 1e-12);
    for (int i = 0; i < 50; ++i) {
      const MatrixXd g = d->G()->exp(rng.box(3, 0.5));
      const MatrixXd u = d->Gstar()->exp(rng.box(3, 0.5));
      const MatrixXd dm = g * u;
      auto [g1, u1] = d->factorize(dm, Order::GU, cfg);
      CHECK(std::max((g1 - g).cwiseAbs().maxCoeff(), (u1 - u).cwiseAbs().maxCoeff()) < 1e-9);
      auto [u2, g2] = d->factorize(dm, Order::UG, cfg);
      CHECK((u2 * g2 - dm).cwiseAbs().maxCoeff() < 1e-9);
      CHECK(d->G()->membership_residual(g2) < 1e-9);
      CHECK(d->Gstar()->membership_residual(u2) < 1e-9);
    }
  }
}

TEST_CASE("degenerate column") {
  auto d = fixtures::su2_double();
  ToleranceConfig cfg;
  MatrixXd bad = MatrixXd::Zero(4, 4);
  CHECK_THROWS(d->factorize(bad, Order::GU, cfg));
}

TEST_CASE("dressing actions") {
  ToleranceConfig cfg;
  for (auto d : {fixtures::su2_double(), fixtures::se2_double()}) {
    SampleStream rng(29);
    const MatrixXd g = d->G()->exp(rng.box(3, 0.5));
    const MatrixXd u = d->Gstar()->exp(rng.box(3, 0.5));
    const MatrixXd eg = d->G()->identity();
    for (auto k : {DressKind::Gstar_on_G_left, DressKind::Gstar_on_G_right}) {
      CHECK((d->dress(eg, g, k, cfg) - g).cwiseAbs().maxCoeff() < 1e-10);
      const MatrixXd v1 = d->Gstar()->exp(rng.box(3, 0.4)), v2 = d->Gstar()->exp(rng.box(3, 0.4));
      const MatrixXd lhs = d->dress(v1 * v2, g, k, cfg);
      const MatrixXd rhs = k == DressKind::Gstar_on_G_left ? d->dress(v1, d->dress(v2, g, k, cfg), k, cfg)
                                                           : d->dress(v2, d->dress(v1, g, k, cfg), k, cfg);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-8);
    }
    for (auto k : {DressKind::G_on_Gstar_left, DressKind::G_on_Gstar_right}) {
      CHECK((d->dress(eg, u, k, cfg) - u).cwiseAbs().maxCoeff() < 1e-10);
      const MatrixXd k1 = d->G()->exp(rng.box(3, 0.4)), k2 = d->G()->exp(rng.box(3, 0.4));
      const MatrixXd lhs = d->dress(k1 * k2, u, k, cfg);
      const MatrixXd rhs = k == DressKind::G_on_Gstar_left ? d->dress(k1, d->dress(k2, u, k, cfg), k, cfg)
                                                           : d->dress(k2, d->dress(k1, u, k, cfg), k, cfg);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("zero Poisson structure: dressing of G* on G is trivial, of G on G* is Coad") {
  auto d = fixtures::se2_double();
  ToleranceConfig cfg;
  SampleStream rng(31);
  for (int i = 0; i < 10; ++i) {
    const MatrixXd g = d->G()->exp(rng.box(3, 0.5));
    const VectorXd mu = rng.box(3, 0.5);
    const MatrixXd u = d->Gstar()->exp(mu);
    CHECK((d->dress(u, g, DressKind::Gstar_on_G_left, cfg) - g).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((d->dress(u, g, DressKind::Gstar_on_G_right, cfg) - g).cwiseAbs().maxCoeff() < 1e-10);
    const VectorXd left = d->Gstar()->log(d->dress(g, u, DressKind::G_on_Gstar_left, cfg));
    CHECK((left - d->G()->Coad(g, mu)).norm() < 1e-10);
    const VectorXd right = d->Gstar()->log(d->dress(g, u, DressKind::G_on_Gstar_right, cfg));
    CHECK((right - d->G()->Coad(g.inverse(), mu)).norm() < 1e-10);
  }
}

TEST_CASE("double multiplication") {
  ToleranceConfig cfg;
  for (auto d : {fixtures::su2_double(), fixtures::se2_double()}) {
    SampleStream rng(37);
    auto sample = [&] {
      return DoublePoint::make(d->G()->exp(rng.box(3, 0.5)), d->Gstar()->exp(rng.box(3, 0.5)));
    };
    const MatrixXd e = d->G()->identity();
    const DoublePoint a = sample(), b = sample(), c = sample();
    const DoublePoint ge = DoublePoint::make(a.g, e), hv = DoublePoint::make(b.g, b.u);
    const DoublePoint r1 = double_multiply(*d, ge, hv, cfg);
    CHECK((r1.g - a.g * b.g).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((r1.u - b.u).cwiseAbs().maxCoeff() < 1e-10);
    const DoublePoint r2 = double_multiply(*d, DoublePoint::make(e, a.u), DoublePoint::make(e, b.u), cfg);
    CHECK((r2.u - a.u * b.u).cwiseAbs().maxCoeff() < 1e-10);
    for (int i = 0; i < 20; ++i) {
      const DoublePoint x = sample(), y = sample(), z = sample();
      const DoublePoint xy = double_multiply(*d, x, y, cfg, true);
      CHECK((xy.d - x.d * y.d).cwiseAbs().maxCoeff() < 1e-9);
      const DoublePoint l = double_multiply(*d, xy, z, cfg);
      const DoublePoint r = double_multiply(*d, x, double_multiply(*d, y, z, cfg), cfg);
      CHECK((l.d - r.d).cwiseAbs().maxCoeff() < 1e-8);
    }
    CHECK(c.cache_residual() == 0.0);
  }
}

TEST_CASE("pi_plus and pi_minus") {
  auto d = fixtures::su2_double();
  const MatrixXd e = d->D()->identity();
  CHECK(d->pi_pm(e, -1).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((d->pi_pm(e, +1) - pi0_matrix(3)).cwiseAbs().maxCoeff() < 1e-12);
  SampleStream rng(41);
  for (int i = 0; i < 25; ++i) {
    const MatrixXd x = d->D()->exp(rng.box(6, 0.5));
    Eigen::JacobiSVD<MatrixXd> svd(d->pi_pm(x, +1));
    CHECK(svd.singularValues().minCoeff() > 1e-6);
  }
}

TEST_CASE("pi_plus from finite-difference translation maps") {
  // pi_+ = (R_d pi0 + L_d pi0)/2 with the translations differentiated in exp-charts.
  auto d = fixtures::su2_double();
  ToleranceConfig cfg;
  SampleStream rng(43);
  GroupSpace space(d->D());
  const MatrixXd x = d->D()->exp(rng.box(6, 0.5));
  const Point e = group_point(d->D()->identity()), px = group_point(x);
  const MatrixXd tr = differential([&](const VectorXd& z) { return space.local(px, group_point(space.retract(e, z).at(0) * x)); },
                                   VectorXd::Zero(6), cfg);
  const MatrixXd tl = differential([&](const VectorXd& z) { return space.local(px, group_point(x * space.retract(e, z).at(0))); },
                                   VectorXd::Zero(6), cfg);
  const MatrixXd p0 = pi0_matrix(3);
  const MatrixXd numeric = 0.5 * (tr * p0 * tr.transpose() + tl * p0 * tl.transpose());
  CHECK((numeric - d->pi_pm(x, +1)).cwiseAbs().maxCoeff() < 1e-8);
}
