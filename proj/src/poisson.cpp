#include "plie/poisson.hpp"

namespace plie {

MatrixXd PoissonManifoldModel::chart_bivector(const Point& base, const VectorXd& y,
                                              const ToleranceConfig& cfg) const {
  const MatrixXd t = space->transition(base, y, cfg);
  return t * bivector(space->retract(base, y)) * t.transpose();
}

PoissonManifoldModel constant_poisson(const std::string& name, const MatrixXd& pi) {
  return {name, std::make_shared<EuclideanSpace>(static_cast<int>(pi.rows())),
          [pi](const Point&) { return pi; }};
}

PoissonManifoldModel point_manifold() {
  return {"point", std::make_shared<PointSpace>(), [](const Point&) { return MatrixXd(0, 0); }};
}

PoissonManifoldModel product(const PoissonManifoldModel& a, const PoissonManifoldModel& b) {
  auto space = std::make_shared<ProductSpace>(std::vector<SpacePtr>{a.space, b.space});
  BivectorFn pa = a.bivector, pb = b.bivector;
  const int da = a.dim(), db = b.dim();
  return {a.name + "x" + b.name, space, [=](const Point& q) {
            MatrixXd m = MatrixXd::Zero(da + db, da + db);
            m.topLeftCorner(da, da) = pa(space->factor(q, 0));
            m.bottomRightCorner(db, db) = pb(space->factor(q, 1));
            return m;
          }};
}

PoissonManifoldModel PoissonLieGroupModel::manifold() const {
  auto fn = bivector;
  return {group->name(), std::make_shared<GroupSpace>(group),
          [fn](const Point& q) { return fn(q.at(0)); }};
}

PoissonLieGroupModel zero_structure(GroupPtr group) {
  const int n = group->dim();
  LieBialgebraData b{group->algebra(), LieAlgebraData(n)};
  return {std::move(group), [n](const MatrixXd&) { return MatrixXd::Zero(n, n); }, std::move(b)};
}

VectorXd chart_gradient(const ChartedSpace& space, const ScalarFn& f, const Point& x,
                        const ToleranceConfig& cfg) {
  return gradient([&](const VectorXd& y) { return f(space.retract(x, y)); },
                  VectorXd::Zero(space.dim()), cfg);
}

VectorXd sharp(const PoissonManifoldModel& m, const VectorXd& alpha, const Point& x) {
  return m.bivector(x) * alpha;
}

double poisson_bracket(const PoissonManifoldModel& m, const ScalarFn& f, const ScalarFn& h,
                       const Point& x, const ToleranceConfig& cfg) {
  const VectorXd df = chart_gradient(*m.space, f, x, cfg);
  const VectorXd dh = chart_gradient(*m.space, h, x, cfg);
  return df.dot(m.bivector(x) * dh);
}

std::vector<MatrixXd> jacobi_tensor(const std::function<MatrixXd(const VectorXd&)>& field, int dim,
                                    double h) {
  const MatrixXd p = field(VectorXd::Zero(dim));
  // dp[m] = d pi / d y_m
  std::vector<MatrixXd> dp(dim);
  for (int m = 0; m < dim; ++m) {
    VectorXd yp = VectorXd::Zero(dim), ym = VectorXd::Zero(dim);
    yp(m) = h;
    ym(m) = -h;
    dp[m] = (field(yp) - field(ym)) / (2.0 * h);
  }
  std::vector<MatrixXd> jac(dim, MatrixXd::Zero(dim, dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        double s = 0.0;
        for (int m = 0; m < dim; ++m)
          s += p(i, m) * dp[m](j, k) + p(j, m) * dp[m](k, i) + p(k, m) * dp[m](i, j);
        jac[i](j, k) = s;
      }
  return jac;
}

namespace {

std::vector<MatrixXd> manifold_jacobi(const PoissonManifoldModel& m, const Point& x,
                                      const ToleranceConfig& cfg) {
  return jacobi_tensor([&](const VectorXd& y) { return m.chart_bivector(x, y, cfg); }, m.dim(),
                       cfg.fd_step);
}

}  // namespace

double jacobi_residual(const PoissonManifoldModel& m, const Point& x, const VectorXd& a,
                       const VectorXd& b, const VectorXd& c, const ToleranceConfig& cfg) {
  const auto jac = manifold_jacobi(m, x, cfg);
  double s = 0.0;
  for (int i = 0; i < m.dim(); ++i) s += a(i) * b.dot(jac[i] * c);
  const double scale = a.norm() * b.norm() * c.norm();
  return scale > 0.0 ? std::abs(s) / scale : 0.0;
}

double jacobi_residual(const PoissonManifoldModel& m, const Point& x, const ToleranceConfig& cfg) {
  double r = 0.0;
  for (const auto& slice : manifold_jacobi(m, x, cfg)) r = std::max(r, slice.cwiseAbs().maxCoeff());
  return r;
}

double poisson_map_residual(const PointMap& phi, const PoissonManifoldModel& src,
                            const PoissonManifoldModel& tgt, const Point& x,
                            const ToleranceConfig& cfg) {
  const Point fx = phi(x);
  const MatrixXd t = differential(
      [&](const VectorXd& y) { return tgt.space->local(fx, phi(src.space->retract(x, y))); },
      VectorXd::Zero(src.dim()), cfg);
  const MatrixXd pushed = t * src.bivector(x) * t.transpose();
  const MatrixXd target = tgt.bivector(fx);
  if (pushed.size() == 0) return 0.0;
  return (pushed - target).cwiseAbs().maxCoeff();
}

double multiplicativity_residual(const PoissonLieGroupModel& g, const MatrixXd& a,
                                 const MatrixXd& b, const ToleranceConfig& cfg) {
  const GroupSpace space(g.group);
  const Point ab = group_point(a * b), pa = group_point(a), pb = group_point(b);
  const int n = g.group->dim();
  const MatrixXd tl = differential(
      [&](const VectorXd& y) { return space.local(ab, group_point(a * space.retract(pb, y).at(0))); },
      VectorXd::Zero(n), cfg);
  const MatrixXd tr = differential(
      [&](const VectorXd& y) { return space.local(ab, group_point(space.retract(pa, y).at(0) * b)); },
      VectorXd::Zero(n), cfg);
  const MatrixXd r = g.bivector(a * b) - tl * g.bivector(b) * tl.transpose() -
                     tr * g.bivector(a) * tr.transpose();
  return r.cwiseAbs().maxCoeff();
}

VectorXd infinitesimal_dressing(const PoissonLieGroupModel& g, const VectorXd& xi, Side side,
                                const MatrixXd& at) {
  const MatrixXd b = g.bivector(at);
  if (side == Side::left) return b * g.group->invariant_one_form(xi, Side::left, at);
  return -b * g.group->invariant_one_form(xi, Side::right, at);
}

MatrixXd linearization_delta(const PoissonLieGroupModel& g, const VectorXd& x,
                             const ToleranceConfig& cfg) {
  const int n = g.group->dim();
  const MatrixXd d = differential(
      [&](const VectorXd& t) {
        const MatrixXd gt = g.group->exp(t(0) * x);
        const MatrixXd ad = g.group->Ad(gt);
        const MatrixXd rt = ad * g.bivector(gt) * ad.transpose();
        return VectorXd(Eigen::Map<const VectorXd>(rt.data(), rt.size()));
      },
      VectorXd::Zero(1), cfg);
  return Eigen::Map<const MatrixXd>(d.data(), n, n);
}

VectorXd ActionModel::generator(const VectorXd& x_alg, const Point& x,
                                const ToleranceConfig& cfg) const {
  return differential(
             [&](const VectorXd& t) {
               return space.space->local(x, apply(group->exp(t(0) * x_alg), x));
             },
             VectorXd::Zero(1), cfg)
      .col(0);
}

namespace {

// v(F) at z along the generator of X, by a central difference on the chart line.
double along_generator(const ActionModel& sigma, const VectorXd& x_alg, const ScalarFn& f,
                       const Point& z, const ToleranceConfig& cfg) {
  const VectorXd v = sigma.generator(x_alg, z, cfg);
  const double h = cfg.fd_step;
  return (f(sigma.space.space->retract(z, h * v)) - f(sigma.space.space->retract(z, -h * v))) /
         (2.0 * h);
}

}  // namespace

double poisson_action_residual(const ActionModel& sigma, const MatrixXd& delta,
                               const VectorXd& x_alg, const ScalarFn& f, const ScalarFn& h,
                               const Point& x, const ToleranceConfig& cfg) {
  const auto& m = sigma.space;
  ToleranceConfig outer = cfg;
  outer.fd_step = cfg.nested_step;

  const ScalarFn fh = [&](const Point& z) { return poisson_bracket(m, f, h, z, cfg); };
  const ScalarFn xf = [&](const Point& z) { return along_generator(sigma, x_alg, f, z, cfg); };
  const ScalarFn xh = [&](const Point& z) { return along_generator(sigma, x_alg, h, z, cfg); };

  const VectorXd v = sigma.generator(x_alg, x, cfg);
  const double s = cfg.nested_step;
  const double lhs = (fh(m.space->retract(x, s * v)) - fh(m.space->retract(x, -s * v))) / (2.0 * s);

  const MatrixXd pi = m.bivector(x);
  const VectorXd df = chart_gradient(*m.space, f, x, cfg);
  const VectorXd dh = chart_gradient(*m.space, h, x, cfg);
  const VectorXd dxf = chart_gradient(*m.space, xf, x, outer);
  const VectorXd dxh = chart_gradient(*m.space, xh, x, outer);
  const double t1 = dxf.dot(pi * dh);
  const double t2 = df.dot(pi * dxh);

  const int k = sigma.group->dim();
  VectorXd a(k), b(k);
  for (int i = 0; i < k; ++i) {
    const VectorXd gi = sigma.generator(VectorXd::Unit(k, i), x, cfg);
    a(i) = df.dot(gi);
    b(i) = dh.dot(gi);
  }
  const double scale = std::max(1.0, x_alg.norm());
  return std::abs(lhs - t1 - t2 - a.dot(delta * b)) / scale;
}

}  // namespace plie
