#include "doctest.h"

#include "fixtures.hpp"

using namespace plie;

namespace {

MatrixXd rotation_generator() {
  MatrixXd a(2, 2);
  a << 0, -1, 1, 0;
  return a;
}

MatrixXd plane_bivector() {
  MatrixXd p(2, 2);
  p << 0, 1, -1, 0;
  return p;
}

}  // namespace

TEST_CASE("Lie-Poisson structure of an additive dual agrees with the double") {
  auto d = fixtures::se2_double();
  SampleStream rng(40);
  for (int i = 0; i < 10; ++i) {
    const VectorXd mu = rng.box(3, 1.0);
    const MatrixXd expect = lie_poisson(d->bialgebra().g, mu);
    CHECK((d->bivector_Gstar(d->Gstar()->exp(mu)) - expect).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("subgroup data") {
  ToleranceConfig cfg;
  SampleStream rng(41);
  {
    auto d = fixtures::su2_double();
    const auto sub = fixtures::torus(*d);
    CHECK(sub.H->algebra().is_abelian());
    for (int i = 0; i < 10; ++i) {
      const MatrixXd u = d->Gstar()->exp(rng.box(3, 0.5)), v = d->Gstar()->exp(rng.box(3, 0.5));
      CHECK(istar_morphism_residual(sub, u, v) < 1e-9);
      CHECK(hcirc_residual(sub, rng.box(2, 0.5), *d) < 1e-9);
      // On algebras i* is the transpose of the inclusion.
      const VectorXd mu = rng.box(3, 0.5);
      CHECK(std::abs(sub.Hstar->log(sub.istar(d->Gstar()->exp(mu)))(0) - mu(2)) < 1e-12);
    }
    // The zero structure on H is multiplicative and its dual bracket vanishes (abelian H).
    CHECK(sub.pair.dual.bivector(sub.Hstar->exp(VectorXd::Constant(1, 0.3))).norm() == 0.0);
  }
  {
    auto d = fixtures::se2_double();
    const auto sub = fixtures::translations(*d);
    for (int i = 0; i < 10; ++i) {
      const MatrixXd u = d->Gstar()->exp(rng.box(3, 0.5)), v = d->Gstar()->exp(rng.box(3, 0.5));
      CHECK(istar_morphism_residual(sub, u, v) < 1e-12);
      CHECK(hcirc_residual(sub, rng.box(1, 0.5), *d) < 1e-12);
      const VectorXd mu = rng.box(3, 0.5);
      CHECK((sub.Hstar->log(sub.istar(d->Gstar()->exp(mu))) - sub.istar_algebra() * mu).norm() < 1e-12);
    }
  }
}

TEST_CASE("zero-structure dressing") {
  ToleranceConfig cfg;
  auto d = fixtures::se2_double();
  const auto sub = fixtures::translations(*d);
  SampleStream rng(42);
  const MatrixXd h = sub.H->exp(rng.box(2, 0.5));
  const MatrixXd w = sub.Hstar->exp(rng.box(2, 0.5));
  CHECK(sub.pair.dressing->dress(w, h, DressKind::Gstar_on_G_left, cfg) == h);
  // H is abelian, so its coadjoint action on H* is trivial.
  CHECK((sub.pair.dressing->dress(h, w, DressKind::G_on_Gstar_left, cfg) - w).cwiseAbs().maxCoeff() < 1e-12);
  // Against the double with H = G: the same Coad as the global dressing.
  ZeroStructureDressing full(d->G(), d->Gstar());
  const MatrixXd g = d->G()->exp(rng.box(3, 0.5)), u = d->Gstar()->exp(rng.box(3, 0.5));
  CHECK((full.dress(g, u, DressKind::G_on_Gstar_left, cfg) - d->dress(g, u, DressKind::G_on_Gstar_left, cfg))
            .cwiseAbs()
            .maxCoeff() < 1e-10);
  CHECK((full.dress(g, u, DressKind::G_on_Gstar_right, cfg) - d->dress(g, u, DressKind::G_on_Gstar_right, cfg))
            .cwiseAbs()
            .maxCoeff() < 1e-10);
}

TEST_CASE("trivial action with constant momentum") {
  ToleranceConfig cfg;
  auto d = fixtures::se2_double();
  const auto sub = fixtures::translations(*d);
  const auto j = point_hamiltonian(sub, sub.Hstar->identity());
  CHECK(momentum_residual(j, VectorXd::Unit(2, 0), Point{}, cfg) == 0.0);
  CHECK(equivariance_residual(j, Point{}, cfg) == 0.0);
  // Zero bivector on R^2, trivial action, constant momentum.
  MomentumMapModel flat{{"trivial", sub.H, constant_poisson("R2", MatrixXd::Zero(2, 2)), Side::left,
                         [](const MatrixXd&, const Point& p) { return p; }},
                        sub.pair,
                        [&](const Point&) { return sub.Hstar->identity(); }};
  CHECK(momentum_residual(flat, VectorXd::Unit(2, 1), vector_point(VectorXd::Ones(2)), cfg) == 0.0);
}

TEST_CASE("canonical actions on the double") {
  ToleranceConfig cfg;
  auto d = fixtures::su2_double();
  const auto sub = fixtures::torus(*d);
  const auto r = canonical_right_action(d, sub, cfg);
  const auto l = canonical_left_action(d, cfg);
  SampleStream rng(43);

  CHECK((r.map(group_point(d->D()->identity())) - sub.Hstar->identity()).cwiseAbs().maxCoeff() < 1e-14);
  const MatrixXd x0 = d->D()->exp(rng.box(6, 0.5));
  CHECK((l.action.apply(d->G()->identity(), group_point(x0)).at(0) - x0).cwiseAbs().maxCoeff() < 1e-12);

  double mr = 0.0, ml = 0.0, er = 0.0, el = 0.0;
  for (int i = 0; i < 25; ++i) {
    const Point x = group_point(d->D()->exp(rng.box(6, 0.5)));
    mr = std::max(mr, momentum_residual(r, rng.normal_vector(1), x, cfg));
    ml = std::max(ml, momentum_residual(l, rng.normal_vector(3), x, cfg));
    er = std::max(er, equivariance_residual(r, x, cfg));
    el = std::max(el, equivariance_residual(l, x, cfg));
  }
  CHECK(mr < 1e-5);
  CHECK(ml < 1e-5);
  CHECK(er < 1e-5);
  CHECK(el < 1e-5);

  double agree = 0.0;
  for (int i = 0; i < 50; ++i) {
    const MatrixXd x = d->D()->exp(rng.box(6, 0.5));
    agree = std::max(agree, (J_l_formula(*d, x, cfg) - J_l_projection(*d, x, cfg)).cwiseAbs().maxCoeff());
  }
  CHECK(agree < 1e-9);

  // l is a left action.
  for (int i = 0; i < 5; ++i) {
    const MatrixXd k1 = d->G()->exp(rng.box(3, 0.5)), k2 = d->G()->exp(rng.box(3, 0.5));
    const MatrixXd x = d->D()->exp(rng.box(6, 0.5));
    CHECK((l_action(*d, k1 * k2, x, cfg) - l_action(*d, k1, l_action(*d, k2, x, cfg), cfg)).cwiseAbs().maxCoeff() <
          1e-9);
  }

  // The wrong sign in the right-action defining equation is detected.
  MomentumMapModel flipped = r;
  flipped.action.side = Side::left;
  const Point x = group_point(d->D()->exp(rng.box(6, 0.5)));
  CHECK(momentum_residual(flipped, VectorXd::Ones(1), x, cfg) > 1e-3);
}

TEST_CASE("right_to_left and product actions") {
  ToleranceConfig cfg;
  SampleStream rng(44);
  auto d = fixtures::su2_double();
  const auto sub = fixtures::torus(*d);
  const auto r = canonical_right_action(d, sub, cfg);
  const auto rt = right_to_left(r, cfg);
  const Point x = group_point(d->D()->exp(rng.box(6, 0.5)));
  CHECK((rt.action.apply(sub.H->identity(), x).at(0) - x.at(0)).cwiseAbs().maxCoeff() < 1e-14);
  // Zero structure on H: the classical flip.
  const MatrixXd h = sub.H->exp(rng.box(1, 0.5));
  CHECK((rt.action.apply(h, x).at(0) - x.at(0) * h.inverse()).cwiseAbs().maxCoeff() < 1e-14);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Point q = group_point(d->D()->exp(rng.box(6, 0.5)));
    worst = std::max(worst, momentum_residual(rt, rng.normal_vector(1), q, cfg));
  }
  CHECK(worst < 1e-4);

  const auto p = affine_hamiltonian(sub, plane_bivector(), {rotation_generator()}, {VectorXd::Zero(2)},
                                    VectorXd::Zero(1));
  const Point p0 = vector_point(rng.box(2, 1.0));
  CHECK(momentum_residual(p, VectorXd::Ones(1), p0, cfg) < 1e-8);
  CHECK(equivariance_residual(p, p0, cfg) < 1e-8);

  const auto check = product_action(p, rt, cfg);
  worst = 0.0;
  double eq = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Point q = ProductSpace::join(vector_point(rng.box(2, 1.0)), group_point(d->D()->exp(rng.box(6, 0.5))));
    worst = std::max(worst, momentum_residual(check, rng.normal_vector(1), q, cfg));
    eq = std::max(eq, equivariance_residual(check, q, cfg));
  }
  CHECK(worst < 1e-4);
  CHECK(eq < 1e-4);

  // Trivial first factor with constant momentum e*: the product momentum is J2.
  const auto triv = product_action(point_hamiltonian(sub, sub.Hstar->identity()), rt, cfg);
  const Point q = group_point(d->D()->exp(rng.box(6, 0.5)));
  CHECK((triv.map(ProductSpace::join(Point{}, q)) - rt.map(q)).cwiseAbs().maxCoeff() == 0.0);

  // Dilation does not preserve the bivector and is rejected.
  CHECK_THROWS_AS(affine_hamiltonian(sub, plane_bivector(), {MatrixXd::Identity(2, 2)}, {VectorXd::Zero(2)}, VectorXd::Zero(1)),
                  ConfigError);
}

TEST_CASE("dressing identities") {
  ToleranceConfig cfg;
  SampleStream rng(45);
  auto d = fixtures::su2_double();
  const auto sub = fixtures::torus(*d);
  const MatrixXd e = d->Gstar()->identity();
  const auto at_e = dressing_identity_residuals(*d, sub, e, rng.normal_vector(1), d->G()->identity(),
                                      rng.normal_vector(3), rng.normal_vector(3), cfg);
  CHECK(at_e.coad_inclusion < 1e-14);
  CHECK(at_e.dressing_fields < 1e-14);
  CHECK(at_e.double_adjoint < 1e-9);
  DressingIdentityResiduals worst;
  for (int i = 0; i < 25; ++i) {
    const auto r = dressing_identity_residuals(*d, sub, d->Gstar()->exp(rng.box(3, 0.5)), rng.normal_vector(1),
                                     d->G()->exp(rng.box(3, 0.5)), rng.normal_vector(3),
                                     rng.normal_vector(3), cfg);
    worst.coad_inclusion = std::max(worst.coad_inclusion, r.coad_inclusion);
    worst.dressing_fields = std::max(worst.dressing_fields, r.dressing_fields);
    worst.double_adjoint = std::max(worst.double_adjoint, r.double_adjoint);
  }
  CHECK(worst.coad_inclusion < 1e-5);
  CHECK(worst.dressing_fields < 1e-5);
  CHECK(worst.double_adjoint < 1e-5);
}

TEST_CASE("classical limit oracle") {
  ToleranceConfig cfg;
  auto d = fixtures::se2_double();
  const auto sub = fixtures::translations(*d);
  SampleStream rng(46);
  const auto rep = classical_limit_oracle(*d, sub, rng, 50, 0.5, cfg);
  CHECK(rep.samples == 50);
  CHECK(rep.max() < 1e-10);
  SampleStream rng2(46);
  CHECK(classical_limit_oracle(*d, sub, rng2, 50, 0.5, cfg, true).max() > 1e-1);
  SampleStream zero_box(1);
  CHECK(classical_limit_oracle(*d, sub, zero_box, 1, 0.0, cfg).max() == 0.0);
  CHECK_THROWS_AS(classical_limit_oracle(*fixtures::su2_double(), fixtures::torus(*fixtures::su2_double()), rng,
                                         1, 0.5, cfg),
                  ConfigError);

  // Momentum equations hold on the semidirect double too.
  const auto r = canonical_right_action(d, sub, cfg);
  const auto l = canonical_left_action(d, cfg);
  for (int i = 0; i < 5; ++i) {
    const Point x = group_point(d->D()->exp(rng.box(6, 0.5)));
    CHECK(momentum_residual(r, rng.normal_vector(2), x, cfg) < 1e-6);
    CHECK(momentum_residual(l, rng.normal_vector(3), x, cfg) < 1e-6);
  }
}
