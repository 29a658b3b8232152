#include "plie/double_group.hpp"

#include <complex>

namespace plie {

namespace {

GroupPtr make_double(const LieBialgebraData& b, const GroupPtr& g, const GroupPtr& gstar,
                     MembershipKind kind) {
  if (g->embed_dim() != gstar->embed_dim())
    throw DimError("G and G* must share the matrix realization of D");
  if (g->dim() != gstar->dim()) throw DimError("G and G* of unequal dimension");
  std::vector<MatrixXd> basis = g->basis();
  for (const auto& m : gstar->basis()) basis.push_back(m);
  DoubleAlgebra da(b);
  return std::make_shared<MatrixGroupModel>("D", da.algebra(), std::move(basis), kind);
}

}  // namespace

DoubleGroupModel::DoubleGroupModel(LieBialgebraData bialgebra, GroupPtr g, GroupPtr gstar,
                                   MembershipKind d_membership, FactorizationMode mode,
                                   std::string closed_form)
    : bialgebra_(std::move(bialgebra)), g_(std::move(g)), gstar_(std::move(gstar)),
      mode_(mode), closed_form_(std::move(closed_form)) {
  d_ = make_double(bialgebra_, g_, gstar_, d_membership);
  if (mode_ == FactorizationMode::closed_form && closed_form_ != "iwasawa_complex")
    throw ConfigError("unknown closed-form factorization '" + closed_form_ + "'");
  p0_ = pi0_matrix(n());
}

std::pair<MatrixXd, MatrixXd> DoubleGroupModel::iwasawa_gu(const MatrixXd& d) const {
  const Eigen::MatrixXcd c = complexify(d);
  const auto m = c.rows();
  Eigen::MatrixXcd q = c;
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(m, m);
  const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      const std::complex<double> proj = q.col(i).dot(q.col(j));  // conjugates the first argument
      r(i, j) = proj;
      q.col(j) -= proj * q.col(i);
    }
    const double nrm = q.col(j).norm();
    if (!(nrm > 1e-13 * scale)) throw DegenerateColumn("column " + std::to_string(j));
    r(j, j) = nrm;
    q.col(j) /= nrm;
  }
  return {realify(q), realify(r)};
}

namespace {

// Left-trivialized differential of exp: sum_k (-ad_y)^k / (k+1)!.
MatrixXd dexp_left(const LieAlgebraData& alg, const VectorXd& y) {
  const MatrixXd ad = -alg.ad(y);
  const auto n = y.size();
  MatrixXd term = MatrixXd::Identity(n, n), sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * ad / static_cast<double>(k + 1);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  return sum;
}

}  // namespace

std::pair<MatrixXd, MatrixXd> DoubleGroupModel::newton_factor(const MatrixXd& d, Order order,
                                                              const ToleranceConfig& cfg) const {
  const int k = n();
  const MatrixXd di = d.inverse();
  const VectorXd z = d_->log(d);
  VectorXd p(2 * k);
  p << z.head(k), z.tail(k);
  auto residual = [&](const VectorXd& q) -> VectorXd {
    const MatrixXd g = g_->exp(q.head(k));
    const MatrixXd u = gstar_->exp(q.tail(k));
    const MatrixXd prod = order == Order::GU ? MatrixXd(g * u) : MatrixXd(u * g);
    return d_->log(di * prod);
  };
  auto split = [&](const VectorXd& q) {
    const MatrixXd g = g_->exp(q.head(k));
    const MatrixXd u = gstar_->exp(q.tail(k));
    return order == Order::GU ? std::make_pair(g, u) : std::make_pair(u, g);
  };

  // Newton with the closed-form Jacobian of q -> log(d^{-1} g u), exact up to the
  // dexp of the residual itself; the finite-difference solver is the fallback.
  VectorXd r = residual(p);
  int polish = 0;
  for (int it = 0; it < cfg.newton_max_iter && r.allFinite(); ++it) {
    if (r.lpNorm<Eigen::Infinity>() < cfg.newton_tol && polish++ >= 1) return split(p);
    const MatrixXd g = g_->exp(p.head(k));
    const MatrixXd u = gstar_->exp(p.tail(k));
    MatrixXd jg = MatrixXd::Zero(2 * k, k), ju = MatrixXd::Zero(2 * k, k);
    jg.topRows(k) = dexp_left(g_->algebra(), p.head(k));
    ju.bottomRows(k) = dexp_left(gstar_->algebra(), p.tail(k));
    MatrixXd jac(2 * k, 2 * k);
    if (order == Order::GU)
      jac << d_->Ad(u.inverse()) * jg, ju;
    else
      jac << jg, d_->Ad(g.inverse()) * ju;
    p -= jac.partialPivLu().solve(r);
    r = residual(p);
  }
  if (r.allFinite() && r.lpNorm<Eigen::Infinity>() < cfg.newton_tol) return split(p);
  return split(newton_solve(residual, p.allFinite() ? p : VectorXd(z), cfg));
}

std::pair<MatrixXd, MatrixXd> DoubleGroupModel::factorize(const MatrixXd& d, Order order,
                                                          const ToleranceConfig& cfg) const {
  d_->check_member(d, "factorize input");
  if (mode_ == FactorizationMode::newton) return newton_factor(d, order, cfg);
  if (order == Order::GU) return iwasawa_gu(d);
  // d = u1 g1  <=>  d^{-1} = g1^{-1} u1^{-1}
  const auto [gi, ui] = iwasawa_gu(d.inverse());
  return {ui.inverse(), gi.inverse()};
}

MatrixXd DoubleGroupModel::dress(const MatrixXd& actor, const MatrixXd& target, DressKind kind,
                                 const ToleranceConfig& cfg) const {
  switch (kind) {
    case DressKind::Gstar_on_G_left:  // g u^{-1} = u' g'
      return factorize(target * actor.inverse(), Order::UG, cfg).second;
    case DressKind::Gstar_on_G_right:  // u^{-1} g = g' u'
      return factorize(actor.inverse() * target, Order::GU, cfg).first;
    case DressKind::G_on_Gstar_left:  // u g^{-1} = g' u'
      return factorize(target * actor.inverse(), Order::GU, cfg).second;
    case DressKind::G_on_Gstar_right:  // g^{-1} u = u' g'
      return factorize(actor.inverse() * target, Order::UG, cfg).first;
  }
  throw ConfigError("unknown dressing kind");
}

MatrixXd DoubleGroupModel::pi_pm(const MatrixXd& d, int sign) const {
  const MatrixXd a = d_->Ad(d.inverse());
  return 0.5 * (a * p0_ * a.transpose() + (sign >= 0 ? 1.0 : -1.0) * p0_);
}

MatrixXd DoubleGroupModel::bivector_G(const MatrixXd& g) const {
  return -pi_pm(g, -1).topLeftCorner(n(), n());
}

MatrixXd DoubleGroupModel::bivector_Gstar(const MatrixXd& u) const {
  return pi_pm(u, -1).bottomRightCorner(n(), n());
}

double pi0(const VectorXd& a, const VectorXd& b) {
  if (a.size() != b.size() || a.size() % 2 != 0) throw DimError("pi0: bad covector sizes");
  const auto n = a.size() / 2;
  return a.head(n).dot(b.tail(n)) - b.head(n).dot(a.tail(n));
}

MatrixXd pi0_matrix(int n) {
  MatrixXd p = MatrixXd::Zero(2 * n, 2 * n);
  p.topRightCorner(n, n).setIdentity();
  p.bottomLeftCorner(n, n) = -MatrixXd::Identity(n, n);
  return p;
}

DoublePoint double_multiply(const DoubleGroupModel& m, const DoublePoint& a, const DoublePoint& b,
                            const ToleranceConfig& cfg, bool cross_check) {
  const MatrixXd rho = m.dress(a.u.inverse(), b.g, DressKind::Gstar_on_G_right, cfg);
  const MatrixXd lam = m.dress(b.g.inverse(), a.u, DressKind::G_on_Gstar_left, cfg);
  DoublePoint out = DoublePoint::make(a.g * rho, lam * b.u);
  if (cross_check) {
    const auto [g, u] = m.factorize(a.d * b.d, Order::GU, cfg);
    const double err = std::max((g - out.g).cwiseAbs().maxCoeff(), (u - out.u).cwiseAbs().maxCoeff());
    if (err > 1e-8) throw InvariantViolation("double_multiply cross-check " + std::to_string(err));
  }
  return out;
}

}  // namespace plie
