#pragma once

#include <functional>
#include <string>

#include "plie/bialgebra.hpp"
#include "plie/charts.hpp"

namespace plie {

/// Bivector at a point, expressed in the natural chart at that point.
using BivectorFn = std::function<MatrixXd(const Point&)>;
using ScalarFn = std::function<double(const Point&)>;
using PointMap = std::function<Point(const Point&)>;

struct PoissonManifoldModel {
  std::string name;
  SpacePtr space;
  BivectorFn bivector;

  int dim() const { return space->dim(); }
  /// Bivector at retract(base, y) pushed into the chart at base.
  MatrixXd chart_bivector(const Point& base, const VectorXd& y, const ToleranceConfig& cfg) const;
};

/// Constant bivector on R^n.
PoissonManifoldModel constant_poisson(const std::string& name, const MatrixXd& pi);
PoissonManifoldModel point_manifold();
/// Product manifold with block-diagonal bivector.
PoissonManifoldModel product(const PoissonManifoldModel& a, const PoissonManifoldModel& b);

/// A Lie group with a multiplicative bivector, left-trivialized.
struct PoissonLieGroupModel {
  GroupPtr group;
  std::function<MatrixXd(const MatrixXd&)> bivector;
  LieBialgebraData bialgebra;

  PoissonManifoldModel manifold() const;
};

/// Zero bivector on a group.
PoissonLieGroupModel zero_structure(GroupPtr group);

/// Gradient of F in the natural chart at x.
VectorXd chart_gradient(const ChartedSpace& space, const ScalarFn& f, const Point& x,
                        const ToleranceConfig& cfg);

/// pi(x) alpha, so that alpha(pi#(beta)) = pi(alpha, beta).
VectorXd sharp(const PoissonManifoldModel& m, const VectorXd& alpha, const Point& x);

double poisson_bracket(const PoissonManifoldModel& m, const ScalarFn& f, const ScalarFn& h,
                       const Point& x, const ToleranceConfig& cfg);

/// Jacobi tensor J_{ijk} = sum_m (pi_im d_m pi_jk + pi_jm d_m pi_ki + pi_km d_m pi_ij) of a
/// bivector field given in one chart, at y = 0, with central step h.
std::vector<MatrixXd> jacobi_tensor(const std::function<MatrixXd(const VectorXd&)>& field, int dim,
                                    double h);

/// |cyclic sum {F,{G,H}}| at x for the affine functions with differentials a, b, c,
/// divided by |a||b||c|.
double jacobi_residual(const PoissonManifoldModel& m, const Point& x, const VectorXd& a,
                       const VectorXd& b, const VectorXd& c, const ToleranceConfig& cfg);
/// Largest |J_ijk| over coordinate triples.
double jacobi_residual(const PoissonManifoldModel& m, const Point& x, const ToleranceConfig& cfg);

double poisson_map_residual(const PointMap& phi, const PoissonManifoldModel& src,
                            const PoissonManifoldModel& tgt, const Point& x,
                            const ToleranceConfig& cfg);

/// |pi(gh) - L_g pi(h) - R_h pi(g)|, translations differentiated in the chart at gh.
double multiplicativity_residual(const PoissonLieGroupModel& g, const MatrixXd& a,
                                 const MatrixXd& b, const ToleranceConfig& cfg);

/// lambda(xi) = pi#(xi^l) or rho(xi) = -pi#(xi^r) at g, in the chart at g.
VectorXd infinitesimal_dressing(const PoissonLieGroupModel& g, const VectorXd& xi, Side side,
                                const MatrixXd& at);

/// delta(X) = d/dt Ad_{g(t)} pi(g(t)) Ad_{g(t)}^T at t = 0, g(t) = exp(tX).
MatrixXd linearization_delta(const PoissonLieGroupModel& g, const VectorXd& x,
                             const ToleranceConfig& cfg);

/// A group acting on a Poisson manifold; apply takes (g, x) for either side.
struct ActionModel {
  std::string name;
  GroupPtr group;
  PoissonManifoldModel space;
  Side side = Side::left;
  std::function<Point(const MatrixXd&, const Point&)> apply;

  /// d/dt of the action along exp(tX), in the chart at x.
  VectorXd generator(const VectorXd& x_alg, const Point& x, const ToleranceConfig& cfg) const;
};

/// sigma(X){F,H} - {sigma(X)F,H} - {F,sigma(X)H} - a^T delta(X) b, with
/// a_i = sigma(e_i)F, b_j = sigma(e_j)H. Outer derivatives use cfg.nested_step.
double poisson_action_residual(const ActionModel& sigma, const MatrixXd& delta, const VectorXd& x_alg, const ScalarFn& f,
                               const ScalarFn& h, const Point& x, const ToleranceConfig& cfg);

}  // namespace plie
