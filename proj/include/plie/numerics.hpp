#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <vector>

#include "plie/errors.hpp"

namespace plie {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Numerical knobs shared by every kernel.
struct ToleranceConfig {
  double fd_step = 1e-5;
  double newton_tol = 1e-12;
  int newton_max_iter = 50;
  double residual_pass = 1e-6;
  std::uint64_t seed = 0;
  /// Step of the outer level when finite differences are nested.
  double nested_step = 1e-3;
  /// One level of Richardson extrapolation on top of the central difference.
  bool richardson = false;

  /// Throws ConfigError when a field is out of range.
  void validate() const;
};

/// Singular-value cutoff used for every rank decision.
inline constexpr double kRankCutoff = 1e-9;

using VectorMap = std::function<VectorXd(const VectorXd&)>;

/// Central-difference Jacobian of `map` at `x`.
///
/// Entry (i, j) is (map_i(x + h e_j) - map_i(x - h e_j)) / 2h with h = cfg.fd_step.
/// Any toolkit error or non-finite value at a stencil point is reported as
/// StencilOutOfDomain.
MatrixXd differential(const VectorMap& map, const VectorXd& x,
                      const ToleranceConfig& cfg);

/// Scalar-function gradient, same stencil as differential().
VectorXd gradient(const std::function<double(const VectorXd&)>& f,
                  const VectorXd& x, const ToleranceConfig& cfg);

struct NewtonOptions {
  /// Accept Jacobians whose rank is below the residual dimension (least-squares mode).
  bool allow_rank_deficient = false;
  /// Extra polishing steps after the tolerance is met.
  int polish_steps = 1;
};

struct NewtonReport {
  VectorXd x;
  double residual_norm = 0.0;  // infinity norm at x
  int iterations = 0;
  bool converged = false;
  bool singular = false;
};

/// Damped Gauss-Newton with a truncated-SVD pseudoinverse step. Never throws on
/// non-convergence; the report carries the outcome.
NewtonReport newton_attempt(const VectorMap& residual, const VectorXd& guess,
                            const ToleranceConfig& cfg, const NewtonOptions& opts = {});

/// As newton_attempt(), but throws NoConvergence / SingularJacobian on failure.
/// The returned point satisfies |residual(x)|_inf < cfg.newton_tol.
VectorXd newton_solve(const VectorMap& residual, const VectorXd& guess,
                      const ToleranceConfig& cfg, const NewtonOptions& opts = {});

/// Orthonormal basis (columns) of the column span of `a`.
MatrixXd orthonormal_basis(const MatrixXd& a, double cutoff = kRankCutoff);

/// Orthonormal basis of the null space of `a` (columns).
MatrixXd null_space(const MatrixXd& a, double cutoff = kRankCutoff);

/// Numerical rank with the shared cutoff, relative to the largest singular value
/// when that exceeds one.
int numerical_rank(const MatrixXd& a, double cutoff = kRankCutoff);

/// Orthonormal basis of span(A) ∩ span(B); both given as columns.
MatrixXd subspace_intersection(const MatrixXd& a, const MatrixXd& b,
                               double cutoff = kRankCutoff);

/// Largest principal-angle sine between two subspaces of equal dimension;
/// returns 1 when dimensions differ.
double subspace_distance(const MatrixXd& a, const MatrixXd& b);

/// Seeded uniform sampler; identical seeds give bit-identical streams.
class SampleStream {
 public:
  explicit SampleStream(std::uint64_t seed);

  double uniform(double lo, double hi);
  VectorXd box(int dim, double half_width);
  VectorXd normal_vector(int dim);

 private:
  std::uint64_t next();
  std::uint64_t state_;
};

}  // namespace plie
