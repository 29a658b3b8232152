#include "plie/momentum.hpp"

namespace plie {

PoissonLiePair double_pair(const std::shared_ptr<const DoubleGroupModel>& d) {
  PoissonLieGroupModel g{d->G(), [d](const MatrixXd& x) { return d->bivector_G(x); }, d->bialgebra()};
  PoissonLieGroupModel u{d->Gstar(), [d](const MatrixXd& x) { return d->bivector_Gstar(x); },
                         dual_bialgebra(d->bialgebra())};
  return {std::move(g), std::move(u), d};
}

MatrixXd lie_poisson(const LieAlgebraData& alg, const VectorXd& mu) {
  const int n = alg.dim();
  MatrixXd p = MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) p(i, j) += alg.c(i, j, k) * mu(k);
  return p;
}

MatrixXd ZeroStructureDressing::dress(const MatrixXd& actor, const MatrixXd& target, DressKind kind,
                                      const ToleranceConfig&) const {
  switch (kind) {
    case DressKind::Gstar_on_G_left:
    case DressKind::Gstar_on_G_right:
      return target;
    case DressKind::G_on_Gstar_left:
      return kstar_->exp(k_->Coad(actor, kstar_->log(target)));
    case DressKind::G_on_Gstar_right:
      return kstar_->exp(k_->Coad(actor.inverse(), kstar_->log(target)));
  }
  throw ConfigError("unknown dressing kind");
}

MatrixXd momentum_differential(const MomentumMapModel& j, const Point& x, const ToleranceConfig& cfg) {
  const auto& dual = j.pair.dual.group;
  const MatrixXd ui = j.map(x).inverse();
  const auto& space = *j.action.space.space;
  return differential([&](const VectorXd& y) { return dual->log(ui * j.map(space.retract(x, y))); },
                      VectorXd::Zero(space.dim()), cfg);
}

double momentum_residual(const MomentumMapModel& j, const VectorXd& x_alg, const Point& x,
                         const ToleranceConfig& cfg) {
  const VectorXd gen = j.action.generator(x_alg, x, cfg);
  const MatrixXd dj = momentum_differential(j, x, cfg);
  const VectorXd form = j.pair.dual.group->invariant_one_form(x_alg, j.action.side, j.map(x));
  const VectorXd push = j.action.space.bivector(x) * (dj.transpose() * form);
  const VectorXd r = j.action.side == Side::left ? VectorXd(gen - push) : VectorXd(gen + push);
  if (r.size() == 0) return 0.0;
  return r.lpNorm<Eigen::Infinity>() / std::max(1.0, x_alg.norm());
}

double equivariance_residual(const MomentumMapModel& j, const Point& x, const ToleranceConfig& cfg) {
  auto map = j.map;
  return poisson_map_residual([map](const Point& q) { return group_point(map(q)); }, j.action.space,
                              j.target(), x, cfg);
}

MomentumMapModel right_to_left(const MomentumMapModel& right, const ToleranceConfig& cfg) {
  if (right.action.side != Side::right) throw ConfigError("right_to_left needs a right action");
  auto apply = right.action.apply;
  auto map = right.map;
  auto dressing = right.pair.dressing;
  ActionModel left{right.action.name + "~", right.action.group, right.action.space, Side::left,
                   [=](const MatrixXd& g, const Point& p) {
                     const MatrixXd lam = dressing->dress(map(p), g, DressKind::Gstar_on_G_left, cfg);
                     return apply(lam.inverse(), p);
                   }};
  return {std::move(left), right.pair, right.map};
}

MomentumMapModel product_action(const MomentumMapModel& a, const MomentumMapModel& b,
                                const ToleranceConfig& cfg) {
  if (a.action.side != Side::left || b.action.side != Side::left)
    throw ConfigError("product_action needs left actions");
  PoissonManifoldModel space = product(a.action.space, b.action.space);
  auto prod = std::dynamic_pointer_cast<const ProductSpace>(space.space);
  auto apply1 = a.action.apply, apply2 = b.action.apply;
  auto j1 = a.map, j2 = b.map;
  auto dressing = b.pair.dressing;
  ActionModel act{a.action.name + "x" + b.action.name, b.action.group, space, Side::left,
                  [=](const MatrixXd& g, const Point& q) {
                    const Point p1 = prod->factor(q, 0), p2 = prod->factor(q, 1);
                    const MatrixXd lam = dressing->dress(j2(p2), g, DressKind::Gstar_on_G_left, cfg);
                    return ProductSpace::join(apply1(lam, p1), apply2(g, p2));
                  }};
  auto map = [=](const Point& q) -> MatrixXd { return j1(prod->factor(q, 0)) * j2(prod->factor(q, 1)); };
  return {std::move(act), b.pair, map};
}

MatrixXd SubgroupData::istar(const MatrixXd& u) const {
  MatrixXd out(istar_rows.size(), istar_cols.size());
  for (std::size_t r = 0; r < istar_rows.size(); ++r)
    for (std::size_t c = 0; c < istar_cols.size(); ++c) out(r, c) = u(istar_rows[r], istar_cols[c]);
  return out;
}

SubgroupData make_subgroup(const DoubleGroupModel& d, const MatrixXd& inclusion,
                           const std::vector<MatrixXd>& hstar_basis, MembershipKind hstar_membership,
                           std::vector<int> rows, std::vector<int> cols, const MatrixXd& hcirc,
                           std::vector<std::pair<int, int>> gauge_slice) {
  const int n = d.n();
  if (inclusion.rows() != n) throw DimError("subgroup inclusion must have dim G rows");
  const int k = static_cast<int>(inclusion.cols());
  if (static_cast<int>(hstar_basis.size()) != k) throw DimError("H* basis size differs from dim H");
  if (hcirc.rows() != n || hcirc.cols() != n - k) throw DimError("H° basis must be dim G x (dim G - dim H)");
  if (static_cast<int>(gauge_slice.size()) != k) throw DimError("gauge slice needs dim H entries");

  SubgroupData s;
  s.inclusion = inclusion;
  s.H = d.G()->subgroup("H", inclusion);
  s.Hstar = std::make_shared<MatrixGroupModel>("H*", LieAlgebraData(k), hstar_basis, hstar_membership);
  s.istar_rows = std::move(rows);
  s.istar_cols = std::move(cols);
  s.hcirc = hcirc;
  s.gauge_slice = std::move(gauge_slice);

  const auto hstar = s.Hstar;
  const LieAlgebraData halg = s.H->algebra();
  PoissonLieGroupModel hpl = zero_structure(s.H);
  PoissonLieGroupModel dual{hstar, [hstar, halg](const MatrixXd& w) { return lie_poisson(halg, hstar->log(w)); },
                            dual_bialgebra(hpl.bialgebra)};
  s.pair = {std::move(hpl), std::move(dual), std::make_shared<ZeroStructureDressing>(s.H, s.Hstar)};
  return s;
}

double istar_morphism_residual(const SubgroupData& sub, const MatrixXd& u, const MatrixXd& v) {
  return (sub.istar(u * v) - sub.istar(u) * sub.istar(v)).cwiseAbs().maxCoeff();
}

double hcirc_residual(const SubgroupData& sub, const VectorXd& c, const DoubleGroupModel& d) {
  const MatrixXd w = sub.istar(d.Gstar()->exp(sub.hcirc * c));
  return (w - sub.Hstar->identity()).cwiseAbs().maxCoeff();
}

MomentumMapModel affine_hamiltonian(const SubgroupData& sub, const MatrixXd& pi,
                                    const std::vector<MatrixXd>& a, const std::vector<VectorXd>& b,
                                    const VectorXd& offset) {
  const int k = sub.dim();
  const auto n = pi.rows();
  if (static_cast<int>(a.size()) != k || static_cast<int>(b.size()) != k || offset.size() != k)
    throw DimError("affine action needs one generator per H direction");
  if (!sub.H->algebra().is_abelian()) throw ConfigError("affine action needs an abelian H");
  const MatrixXd pinv = pi.inverse();
  std::vector<MatrixXd> gen(k), sym(k);
  std::vector<VectorXd> lin(k);
  for (int i = 0; i < k; ++i) {
    sym[i] = pinv * a[i];
    lin[i] = pinv * b[i];
    if ((sym[i] - sym[i].transpose()).cwiseAbs().maxCoeff() > 1e-12)
      throw ConfigError("affine generator " + std::to_string(i) + " is not Hamiltonian");
    gen[i] = MatrixXd::Zero(n + 1, n + 1);
    gen[i].topLeftCorner(n, n) = a[i];
    gen[i].topRightCorner(n, 1) = b[i];
  }
  const GroupPtr H = sub.H;
  ActionModel act{"affine", H, constant_poisson("P", pi), Side::left,
                  [H, gen, n](const MatrixXd& h, const Point& p) {
                    const VectorXd y = H->log(h);
                    MatrixXd m = MatrixXd::Zero(n + 1, n + 1);
                    for (std::size_t i = 0; i < gen.size(); ++i) m += y(i) * gen[i];
                    VectorXd q(n + 1);
                    q << p.at(0).col(0), 1.0;
                    return vector_point((expm(m) * q).head(n));
                  }};
  const GroupPtr Hstar = sub.Hstar;
  auto map = [Hstar, sym, lin, offset](const Point& p) -> MatrixXd {
    const VectorXd v = p.at(0).col(0);
    VectorXd j(offset.size());
    for (Eigen::Index i = 0; i < j.size(); ++i) j(i) = 0.5 * v.dot(sym[i] * v) + lin[i].dot(v) + offset(i);
    return Hstar->exp(j);
  };
  return {std::move(act), sub.pair, map};
}

MomentumMapModel point_hamiltonian(const SubgroupData& sub, const MatrixXd& value) {
  ActionModel act{"point", sub.H, point_manifold(), Side::left,
                  [](const MatrixXd&, const Point& p) { return p; }};
  return {std::move(act), sub.pair, [value](const Point&) { return value; }};
}

PoissonManifoldModel double_symplectic(const std::shared_ptr<const DoubleGroupModel>& d) {
  return {"D+", std::make_shared<GroupSpace>(d->D()),
          [d](const Point& q) { return d->pi_pm(q.at(0), 1); }};
}

MomentumMapModel canonical_right_action(const std::shared_ptr<const DoubleGroupModel>& d,
                                        const SubgroupData& sub, const ToleranceConfig& cfg) {
  ActionModel r{"r", sub.H, double_symplectic(d), Side::right,
                [](const MatrixXd& h, const Point& x) { return group_point(x.at(0) * h); }};
  auto istar = [sub](const MatrixXd& u) { return sub.istar(u); };
  auto map = [d, istar, cfg](const Point& x) -> MatrixXd {
    return istar(d->factorize(x.at(0), Order::GU, cfg).second).inverse();
  };
  return {std::move(r), sub.pair, map};
}

MatrixXd J_l_formula(const DoubleGroupModel& d, const MatrixXd& x, const ToleranceConfig& cfg) {
  const auto [g, u] = d.factorize(x, Order::GU, cfg);
  return d.dress(g.inverse(), u, DressKind::G_on_Gstar_right, cfg);
}

MatrixXd J_l_projection(const DoubleGroupModel& d, const MatrixXd& x, const ToleranceConfig& cfg) {
  return d.factorize(x, Order::UG, cfg).first;
}

MatrixXd l_action(const DoubleGroupModel& d, const MatrixXd& k, const MatrixXd& x,
                  const ToleranceConfig& cfg) {
  return d.dress(J_l_formula(d, x, cfg), k, DressKind::Gstar_on_G_left, cfg) * x;
}

MomentumMapModel canonical_left_action(const std::shared_ptr<const DoubleGroupModel>& d,
                                       const ToleranceConfig& cfg) {
  ActionModel l{"l", d->G(), double_symplectic(d), Side::left,
                [d, cfg](const MatrixXd& k, const Point& x) { return group_point(l_action(*d, k, x.at(0), cfg)); }};
  auto map = [d, cfg](const Point& x) { return J_l_formula(*d, x.at(0), cfg); };
  return {std::move(l), double_pair(d), map};
}

DressingIdentityResiduals dressing_identity_residuals(const DoubleGroupModel& d, const SubgroupData& sub,
                                   const MatrixXd& u, const VectorXd& y, const MatrixXd& g,
                                   const VectorXd& xi, const VectorXd& x, const ToleranceConfig& cfg) {
  DressingIdentityResiduals out;
  const int n = d.n();

  // (1) i_* Coad(w^{-1}) Y = Coad(u) i_* Y, w = (i* u)^{-1}
  const MatrixXd w = sub.istar(u).inverse();
  const VectorXd lhs1 = sub.inclusion * sub.Hstar->Coad(w.inverse(), y);
  const VectorXd rhs1 = d.Gstar()->Coad(u, sub.inclusion * y);
  out.coad_inclusion = (lhs1 - rhs1).lpNorm<Eigen::Infinity>() / std::max(1.0, y.norm());

  // (2) rho(Coad(g) xi)(g) = -lambda(xi)(g)
  PoissonLieGroupModel gpl{d.G(), [&d](const MatrixXd& q) { return d.bivector_G(q); }, d.bialgebra()};
  const VectorXd r2 = infinitesimal_dressing(gpl, d.G()->Coad(g, xi), Side::right, g) +
                      infinitesimal_dressing(gpl, xi, Side::left, g);
  out.dressing_fields = r2.lpNorm<Eigen::Infinity>() / std::max(1.0, xi.norm());

  // (3) Ad_D(u)(X + 0) = T_e rho_{u^{-1}}(X) + (-T_u R_{u^{-1}} lambda(X)(u)), both
  // dressing derivatives taken from the global dressing.
  VectorXd x0 = VectorXd::Zero(2 * n);
  x0.head(n) = x;
  const VectorXd lhs3 = d.D()->Ad(u) * x0;
  const MatrixXd ui = u.inverse();
  const VectorXd t_rho =
      differential(
          [&](const VectorXd& t) {
            return d.G()->log(d.dress(ui, d.G()->exp(t(0) * x), DressKind::Gstar_on_G_right, cfg));
          },
          VectorXd::Zero(1), cfg)
          .col(0);
  const VectorXd lam =
      differential(
          [&](const VectorXd& t) {
            return d.Gstar()->log(ui * d.dress(d.G()->exp(t(0) * x), u, DressKind::G_on_Gstar_left, cfg));
          },
          VectorXd::Zero(1), cfg)
          .col(0);
  VectorXd rhs3(2 * n);
  rhs3 << t_rho, -d.Gstar()->Ad(u) * lam;
  out.double_adjoint = (lhs3 - rhs3).lpNorm<Eigen::Infinity>() / std::max(1.0, x.norm());
  return out;
}

ClassicalLimitReport classical_limit_oracle(const DoubleGroupModel& d, const SubgroupData& sub,
                                            SampleStream& rng, int samples, double box,
                                            const ToleranceConfig& cfg, bool flip_coad) {
  if (!d.bialgebra().gstar.is_abelian())
    throw ConfigError("classical limit oracle needs a zero Poisson structure");
  const auto& G = d.G();
  const auto& U = d.Gstar();
  const int n = d.n();
  ClassicalLimitReport rep;
  auto upd = [](double& slot, double v) { slot = std::max(slot, v); };
  for (int s = 0; s < samples; ++s) {
    const MatrixXd g = G->exp(rng.box(n, box));
    const VectorXd mu = rng.box(n, box);
    const MatrixXd x = g * U->exp(mu);
    const VectorXd yh = rng.box(sub.dim(), box);
    const MatrixXd h = sub.H->exp(yh);
    const MatrixXd k = G->exp(rng.box(n, box));

    const auto [rg, ru] = d.factorize(x * h, Order::GU, cfg);
    upd(rep.right_action, std::max((rg - g * h).cwiseAbs().maxCoeff(),
                                   (U->log(ru) - G->Coad(h.inverse(), mu)).cwiseAbs().maxCoeff()));

    const auto [lg, lu] = d.factorize(l_action(d, k, x, cfg), Order::GU, cfg);
    upd(rep.left_action,
        std::max((lg - k * g).cwiseAbs().maxCoeff(), (U->log(lu) - mu).cwiseAbs().maxCoeff()));

    const MatrixXd jr = sub.istar(d.factorize(x, Order::GU, cfg).second).inverse();
    upd(rep.right_momentum,
        (sub.Hstar->log(jr) + sub.istar_algebra() * mu).cwiseAbs().maxCoeff());

    const VectorXd expect = flip_coad ? VectorXd(G->Ad(g).transpose() * mu) : G->Coad(g, mu);
    upd(rep.left_momentum, (U->log(J_l_formula(d, x, cfg)) - expect).cwiseAbs().maxCoeff());
    ++rep.samples;
  }
  return rep;
}

}  // namespace plie
