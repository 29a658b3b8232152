#include "plie/induction.hpp"

#include <cmath>

namespace plie {

namespace {

// Some singular value sits within a factor 10 of the cutoff (relative scale as in numerical_rank).
bool near_cutoff(const MatrixXd& a, bool absolute = false) {
  if (a.size() == 0) return false;
  Eigen::JacobiSVD<MatrixXd> svd(a);
  const VectorXd& s = svd.singularValues();
  const double scale = absolute ? 1.0 : std::max(1.0, s(0));
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double r = s(i) / scale;
    if (r > kRankCutoff / 10.0 && r < kRankCutoff * 10.0) return true;
  }
  return false;
}

double inf_norm(const VectorXd& v) { return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0; }
double max_abs(const MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

SubcharacteristicResult subcharacteristic_basis(const PoissonManifoldModel& m, const ConstraintFn& n,
                                                const Point& x, const ToleranceConfig& cfg) {
  const auto& sp = *m.space;
  const int dim = sp.dim();
  ToleranceConfig rc = cfg;
  rc.richardson = true;
  const auto codim = n(x).size();
  const MatrixXd jc = codim ? differential([&](const VectorXd& y) { return n(sp.retract(x, y)); },
                                           VectorXd::Zero(dim), rc)
                            : MatrixXd(0, dim);
  SubcharacteristicResult out;
  out.tangent = null_space(jc);
  const MatrixXd ann = orthonormal_basis(jc.transpose());
  const MatrixXd img = m.bivector(x) * ann;
  out.basis = subspace_intersection(img, out.tangent);

  out.rank_unstable = near_cutoff(jc) || near_cutoff(img);
  const MatrixXd qa = orthonormal_basis(img), qb = out.tangent;
  if (qa.cols() && qb.cols()) {
    MatrixXd stacked(dim, qa.cols() + qb.cols());
    stacked << qa, -qb;
    out.rank_unstable = out.rank_unstable || near_cutoff(stacked, true);
  }
  return out;
}

CleanIntersectionReport clean_intersection_report(const PoissonManifoldModel& m, const ConstraintFn& n,
                                                  const std::vector<Point>& samples,
                                                  const ToleranceConfig& cfg) {
  CleanIntersectionReport rep;
  for (const auto& x : samples) {
    const SubcharacteristicResult sc = subcharacteristic_basis(m, n, x, cfg);
    const MatrixXd leaf = orthonormal_basis(m.bivector(x));
    const MatrixXd both = subspace_intersection(sc.tangent, leaf);
    rep.leaf_ranks.push_back(static_cast<int>(both.cols()));
    rep.characteristic_ranks.push_back(static_cast<int>(sc.basis.cols()));
    rep.rank_unstable = rep.rank_unstable || sc.rank_unstable || near_cutoff(m.bivector(x));
  }
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (rep.leaf_ranks[i] != rep.leaf_ranks[0] || rep.characteristic_ranks[i] != rep.characteristic_ranks[0])
      rep.rank_jump = true;
  return rep;
}

CheckSpace build_check_space(std::shared_ptr<const DoubleGroupModel> d, const SubgroupData& sub,
                             const MomentumMapModel& p, const ToleranceConfig& cfg) {
  CheckSpace cs;
  cs.d = d;
  cs.sub = sub;
  cs.P = p;
  cs.right = canonical_right_action(d, sub, cfg);
  cs.check = product_action(p, right_to_left(cs.right, cfg), cfg);
  cs.space = std::dynamic_pointer_cast<const ProductSpace>(cs.check.action.space.space);
  return cs;
}

VectorXd ConstraintQuotient::constraint(const Point& x) const {
  return cs_.sub.Hstar->log(cs_.check.map(x));
}

Point ConstraintQuotient::project(const Point& x) const {
  const auto& sp = *cs_.space;
  const VectorXd y = newton_solve([&](const VectorXd& v) { return constraint(sp.retract(x, v)); },
                                  VectorXd::Zero(sp.dim()), cfg_);
  return sp.retract(x, y);
}

VectorXd ConstraintQuotient::slice(const Point& x) const {
  const MatrixXd g = cs_.d->factorize(cs_.d_part(x), Order::GU, cfg_).first;
  VectorXd out(cs_.sub.gauge_slice.size());
  for (std::size_t i = 0; i < cs_.sub.gauge_slice.size(); ++i)
    out(i) = g(cs_.sub.gauge_slice[i].first, cs_.sub.gauge_slice[i].second);
  return out;
}

Point ConstraintQuotient::gauge(const Point& x, VectorXd* h_param) const {
  const VectorXd t = newton_solve([&](const VectorXd& y) { return slice(cs_.act(y, x)); },
                                  VectorXd::Zero(cs_.sub.dim()), cfg_);
  if (h_param) *h_param = t;
  return cs_.act(t, x);
}

double ConstraintQuotient::orbit_residual(const Point& x, const Point& target) const {
  const auto& sp = *cs_.space;
  NewtonOptions opts;
  opts.allow_rank_deficient = true;
  const NewtonReport r = newton_attempt([&](const VectorXd& y) { return sp.local(target, cs_.act(y, x)); },
                                        VectorXd::Zero(cs_.sub.dim()), cfg_, opts);
  return r.residual_norm;
}

Point ConstraintQuotient::l_check(const MatrixXd& k, const Point& x) const {
  const Point out = cs_.make(cs_.p_part(x), l_action(*cs_.d, k, cs_.d_part(x), cfg_));
  const double drift = inf_norm(constraint(out) - constraint(x));
  if (drift > 1e-7) throw InvariantViolation("J-check drifts by " + std::to_string(drift) + " under l");
  return out;
}

MatrixXd ConstraintQuotient::L_check(const Point& x) const { return J_l_formula(*cs_.d, cs_.d_part(x), cfg_); }

Point ConstraintQuotient::induced_action(const MatrixXd& k, const Point& x) const {
  return gauge(l_check(k, x));
}

VectorXd ConstraintQuotient::chart_canonical(const Point& x0, const VectorXd& y) const {
  const auto& sp = *cs_.space;
  return sp.local(x0, canonical(sp.retract(x0, y)));
}

MatrixXd ConstraintQuotient::induced_bivector(const Point& x0, const VectorXd& z) const {
  const MatrixXd dc = differential([&](const VectorXd& y) { return chart_canonical(x0, y); }, z, cfg_);
  return dc * cs_.check.action.space.chart_bivector(x0, z, cfg_) * dc.transpose();
}

PoissonManifoldModel ConstraintQuotient::induced_chart_manifold(const Point& x0) const {
  const ConstraintQuotient self = *this;
  return {"induced", std::make_shared<EuclideanSpace>(cs_.dim()), [self, x0](const Point& q) {
            return self.induced_bivector(x0, self.chart_canonical(x0, q.at(0).col(0)));
          }};
}

double invariance_residual(const ConstraintQuotient& q, const ScalarFn& f, const Point& x) {
  const auto& cs = q.space();
  const auto& cfg = q.config();
  const VectorXd grad = chart_gradient(*cs.space, f, x, cfg);
  double worst = 0.0;
  for (int i = 0; i < cs.sub.dim(); ++i) {
    const VectorXd gen = cs.check.action.generator(VectorXd::Unit(cs.sub.dim(), i), x, cfg);
    worst = std::max(worst, std::abs(grad.dot(gen)));
  }
  return worst / std::max(1.0, grad.norm());
}

double induced_bracket(const ConstraintQuotient& q, const ScalarFn& f, const ScalarFn& h, const Point& x) {
  for (const ScalarFn* fn : {&f, &h}) {
    const double r = invariance_residual(q, *fn, x);
    if (r > 1e-6) throw NotInvariant("function moves along the H-orbit by " + std::to_string(r));
  }
  const auto& cs = q.space();
  auto ext = [&](const ScalarFn& fn) { return [&q, &fn](const Point& p) { return fn(q.canonical(p)); }; };
  const VectorXd df = chart_gradient(*cs.space, ext(f), x, q.config());
  const VectorXd dh = chart_gradient(*cs.space, ext(h), x, q.config());
  return df.dot(cs.check.action.space.bivector(x) * dh);
}

double induced_jacobi_residual(const ConstraintQuotient& q, const Point& x) {
  const int dim = q.space().dim();
  const auto field = [&](const VectorXd& y) { return q.induced_bivector(x, q.chart_canonical(x, y)); };
  double worst = 0.0;
  for (const auto& slab : jacobi_tensor(field, dim, q.config().nested_step))
    worst = std::max(worst, max_abs(slab));
  return worst;
}

double induced_momentum_residual(const ConstraintQuotient& q, const VectorXd& x_alg, const Point& x) {
  const auto& cs = q.space();
  const auto& cfg = q.config();
  const auto& sp = *cs.space;
  const auto& G = cs.d->G();
  const auto& U = cs.d->Gstar();
  const VectorXd gen =
      differential([&](const VectorXd& t) { return sp.local(x, q.induced_action(G->exp(t(0) * x_alg), x)); },
                   VectorXd::Zero(1), cfg)
          .col(0);
  const MatrixXd l0 = q.L_check(x);
  const MatrixXd li = l0.inverse();
  const MatrixXd dj = differential(
      [&](const VectorXd& y) { return U->log(li * q.L_check(q.canonical(sp.retract(x, y)))); },
      VectorXd::Zero(sp.dim()), cfg);
  const MatrixXd t = q.induced_bivector(x, VectorXd::Zero(sp.dim()));
  const VectorXd form = U->invariant_one_form(x_alg, Side::left, l0);
  return inf_norm(gen - t * (dj.transpose() * form)) / std::max(1.0, x_alg.norm());
}

double induced_action_residual(const ConstraintQuotient& q, const VectorXd& x_alg, const ScalarFn& f,
                               const ScalarFn& h, const Point& x) {
  const auto& cs = q.space();
  const auto& cfg = q.config();
  const auto sp = cs.space;
  const ConstraintQuotient self = q;
  ActionModel act{"induced", cs.d->G(), q.induced_chart_manifold(x), Side::left,
                  [self, sp, x](const MatrixXd& k, const Point& p) {
                    const Point s = self.canonical(sp->retract(x, p.at(0).col(0)));
                    return vector_point(sp->local(x, self.induced_action(k, s)));
                  }};
  auto chart_fn = [sp, x](const ScalarFn& fn) -> ScalarFn {
    return [sp, x, fn](const Point& p) { return fn(sp->retract(x, p.at(0).col(0))); };
  };
  const PoissonLieGroupModel gpl = double_pair(cs.d).group;
  const MatrixXd delta = linearization_delta(gpl, x_alg, cfg);
  return poisson_action_residual(act, delta, x_alg, chart_fn(f), chart_fn(h),
                                 vector_point(VectorXd::Zero(sp->dim())), cfg);
}

CommutationResiduals commutation_residuals(const CheckSpace& cs, const MatrixXd& k, const MatrixXd& h, const Point& x,
                                 const ToleranceConfig& cfg) {
  const DoubleGroupModel& d = *cs.d;
  const MatrixXd& dd = cs.d_part(x);
  const MatrixXd lk = l_action(d, k, dd, cfg);
  CommutationResiduals out;
  out.jr_under_l = group_difference(cs.right.map(group_point(lk)), cs.right.map(group_point(dd)));
  out.jl_under_r = group_difference(J_l_formula(d, dd * h, cfg), J_l_formula(d, dd, cfg));
  out.r_l_commute = group_difference(lk * h, l_action(d, k, dd * h, cfg));

  auto lcheck = [&](const Point& p) { return cs.make(cs.p_part(p), l_action(d, k, cs.d_part(p), cfg)); };
  const Point a = lcheck(cs.check.action.apply(h, x));
  const Point b = cs.check.action.apply(h, lcheck(x));
  out.check_commute = inf_norm(cs.space->local(a, b));
  return out;
}

PointInductionReport point_induction_report(std::shared_ptr<const DoubleGroupModel> d, const SubgroupData& sub,
                                        const VectorXd& u0c, const MatrixXd& section, SampleStream& rng,
                                        int samples, double box, const ToleranceConfig& cfg) {
  const auto& G = d->G();
  const auto& U = d->Gstar();
  const auto& D = d->D();
  const int n = d->n();
  const int k = sub.dim();
  if (section.rows() != n || section.cols() != k) throw DimError("section must be dim G x dim H");

  PointInductionReport rep;
  const MatrixXd u0 = sub.Hstar->exp(u0c);
  auto sstar = [&](const MatrixXd& u) { return U->exp(section * sub.Hstar->log(u)); };
  const MatrixXd w0 = sstar(u0);
  rep.section_residual = max_abs(sub.istar(w0) - u0);

  for (int s = 0; s < samples; ++s) {
    const MatrixXd h = sub.H->exp(rng.box(k, box));
    const MatrixXd hu0 = sub.pair.dressing->dress(h, u0, DressKind::G_on_Gstar_left, cfg);
    const double fixed = group_difference(hu0, u0);
    if (fixed > 1e-9) throw NotDressingInvariant("u0 moves by " + std::to_string(fixed) + " under H");
    const double commute = group_difference(d->dress(h, w0, DressKind::G_on_Gstar_left, cfg), sstar(hu0));
    rep.dressing_invariance = std::max(rep.dressing_invariance, std::max(fixed, commute));
  }

  const MatrixXd w = w0.inverse();
  const GroupSpace dspace(D);
  auto q_residual = [&](const MatrixXd& dd, const MatrixXd& ww) {
    const MatrixXd tq = differential(
        [&](const VectorXd& y) {
          return dspace.local(group_point(dd * ww), group_point(dspace.retract(group_point(dd), y).at(0) * ww));
        },
        VectorXd::Zero(2 * n), cfg);
    return max_abs(tq * d->pi_pm(dd, 1) * tq.transpose() - d->pi_pm(dd * ww, 1) - d->pi_pm(ww, -1));
  };
  rep.modification_identity = max_abs(d->pi_pm(D->identity(), -1));

  const CheckSpace cs = build_check_space(d, sub, point_hamiltonian(sub, u0), cfg);
  const ConstraintQuotient q(cs, cfg);
  for (int s = 0; s < samples; ++s) {
    const MatrixXd dd = D->exp(rng.box(2 * n, box));
    rep.q_relation = std::max(rep.q_relation, q_residual(dd, w));
    rep.q_relation_identity = std::max(rep.q_relation_identity, q_residual(dd, D->identity()));

    const MatrixXd g = G->exp(rng.box(n, box));
    const MatrixXd nn = U->exp(sub.hcirc * rng.box(n - k, box));
    const MatrixXd x = g * nn * w0;
    rep.constraint = std::max(rep.constraint, inf_norm(q.constraint(cs.make({}, x))));

    const auto [ig, in] = d->factorize(x * w, Order::GU, cfg);
    double r = std::max(max_abs(ig - g), max_abs(in - nn));
    r = std::max(r, max_abs(sub.istar(in) - sub.Hstar->identity()));
    r = std::max(r, max_abs(ig * in * w0 - x));
    rep.roundtrip = std::max(rep.roundtrip, r);
    ++rep.samples;
  }
  return rep;
}

namespace {

// Best least-squares residual of lambda_{exp(x)}(w) = target over a few seeded starts.
double dressing_fit(const DoubleGroupModel& d, const GroupPtr& actor, const DressingProvider& dressing,
                    const MatrixXd& w, const MatrixXd& target, const GroupPtr& dual, SampleStream& rng,
                    const ToleranceConfig& cfg) {
  const MatrixXd ti = target.inverse();
  auto r = [&](const VectorXd& x) {
    return dual->log(ti * dressing.dress(actor->exp(x), w, DressKind::G_on_Gstar_left, cfg));
  };
  NewtonOptions opts;
  opts.allow_rank_deficient = true;
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < 6; ++s) {
    const VectorXd guess = s == 0 ? VectorXd::Zero(actor->dim()) : rng.box(actor->dim(), M_PI);
    try {
      best = std::min(best, newton_attempt(r, guess, cfg, opts).residual_norm);
    } catch (const Error&) {
    }
    if (best < 1e-10) break;
  }
  (void)d;
  return best;
}

}  // namespace

OrbitInductionReport orbit_induction_report(std::shared_ptr<const DoubleGroupModel> d, const SubgroupData& sub,
                                        const VectorXd& wc, SampleStream& rng, int samples, double box,
                                        const ToleranceConfig& cfg) {
  const auto& G = d->G();
  const auto& U = d->Gstar();
  const int n = d->n();
  const int k = sub.dim();
  OrbitInductionReport rep;
  const MatrixXd w = U->exp(wc);
  const MatrixXd v = sub.istar(w);
  const CheckSpace cs = build_check_space(d, sub, point_hamiltonian(sub, v), cfg);
  rep.classical = d->bialgebra().gstar.is_abelian();

  bool holds = true;
  for (int s = 0; s < samples; ++s) {
    const MatrixXd nn = U->exp(sub.hcirc * rng.box(n - k, box));
    const double cr = dressing_fit(*d, sub.H, *d, w, w * nn, U, rng, cfg);
    rep.condition_residual = std::max(rep.condition_residual, cr);
    if (!(cr < 1e-6)) {
      holds = false;
      ++rep.condition_failures;
    }

    const MatrixXd g = G->exp(rng.box(n, box));
    const MatrixXd u = nn * w;
    const double mr = dressing_fit(*d, G, *d, w, J_l_formula(*d, g * u, cfg), U, rng, cfg);
    rep.membership = std::max(rep.membership, mr);
    if (!(mr < 1e-6)) ++rep.membership_failures;

    const MatrixXd uh = d->dress(sub.H->exp(rng.box(k, box)), w, DressKind::G_on_Gstar_left, cfg);
    rep.orbit_membership =
        std::max(rep.orbit_membership, dressing_fit(*d, G, *d, w, J_l_formula(*d, g * uh, cfg), U, rng, cfg));

    const MatrixXd h = sub.H->exp(rng.box(k, box));
    const MatrixXd moved = cs.d_part(cs.check.action.apply(h, cs.make({}, g * u)));
    const MatrixXd expect = g * h.inverse() * d->dress(h.inverse(), u, DressKind::G_on_Gstar_right, cfg);
    rep.sigma_coincidence = std::max(rep.sigma_coincidence, group_difference(moved, expect));

    if (rep.classical) {
      const VectorXd mu = U->log(u);
      const VectorXd jl = U->log(J_l_formula(*d, g * u, cfg));
      rep.classical_deviation = std::max(rep.classical_deviation, inf_norm(jl - G->Coad(g, mu)));
    }
    ++rep.samples;
  }
  rep.condition_holds = holds;
  return rep;
}

}  // namespace plie
