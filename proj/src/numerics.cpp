#include "plie/numerics.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace plie {

void ToleranceConfig::validate() const {
  if (!(fd_step > 0.0)) throw ConfigError("fd_step must be positive");
  if (!(nested_step > 0.0)) throw ConfigError("nested_step must be positive");
  if (!(newton_tol > 0.0)) throw ConfigError("newton_tol must be positive");
  if (newton_max_iter < 1) throw ConfigError("newton_max_iter must be at least 1");
  if (!(residual_pass > 0.0)) throw ConfigError("residual_pass must be positive");
}

namespace {

VectorXd eval_stencil(const VectorMap& map, const VectorXd& x) {
  VectorXd y;
  try {
    y = map(x);
  } catch (const Error& e) {
    throw StencilOutOfDomain(e.what());
  }
  if (!y.allFinite()) throw StencilOutOfDomain("non-finite map value at stencil point");
  return y;
}

MatrixXd central(const VectorMap& map, const VectorXd& x, double h) {
  const auto n = x.size();
  MatrixXd jac;
  for (Eigen::Index j = 0; j < n; ++j) {
    VectorXd xp = x, xm = x;
    xp(j) += h;
    xm(j) -= h;
    const VectorXd col = (eval_stencil(map, xp) - eval_stencil(map, xm)) / (2.0 * h);
    if (j == 0) jac.resize(col.size(), n);
    jac.col(j) = col;
  }
  if (n == 0) jac.resize(eval_stencil(map, x).size(), 0);
  return jac;
}

}  // namespace

MatrixXd differential(const VectorMap& map, const VectorXd& x,
                      const ToleranceConfig& cfg) {
  const MatrixXd d1 = central(map, x, cfg.fd_step);
  if (!cfg.richardson) return d1;
  const MatrixXd d2 = central(map, x, 0.5 * cfg.fd_step);
  return (4.0 * d2 - d1) / 3.0;
}

VectorXd gradient(const std::function<double(const VectorXd&)>& f, const VectorXd& x,
                  const ToleranceConfig& cfg) {
  const MatrixXd d = differential(
      [&](const VectorXd& y) { return VectorXd::Constant(1, f(y)); }, x, cfg);
  return d.row(0).transpose();
}

NewtonReport newton_attempt(const VectorMap& residual, const VectorXd& guess,
                            const ToleranceConfig& cfg, const NewtonOptions& opts) {
  cfg.validate();
  NewtonReport rep;
  rep.x = guess;
  VectorXd r = residual(rep.x);
  rep.residual_norm = r.size() ? r.lpNorm<Eigen::Infinity>() : 0.0;
  int polish = 0;

  for (int it = 0; it < cfg.newton_max_iter; ++it) {
    if (rep.residual_norm < cfg.newton_tol) {
      rep.converged = true;
      if (polish >= opts.polish_steps || rep.residual_norm == 0.0) break;
      ++polish;
    }
    rep.iterations = it + 1;
    const MatrixXd jac = differential(residual, rep.x, cfg);
    Eigen::JacobiSVD<MatrixXd> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const VectorXd& s = svd.singularValues();
    const double smax = s.size() ? s(0) : 0.0;
    const double thresh = kRankCutoff * std::max(1.0, smax);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > thresh) ++rank;
    if (rank < r.size() && !opts.allow_rank_deficient) {
      rep.singular = true;
      rep.converged = false;
      return rep;
    }
    VectorXd step = VectorXd::Zero(rep.x.size());
    const VectorXd utr = svd.matrixU().transpose() * r;
    for (Eigen::Index i = 0; i < rank; ++i) step += svd.matrixV().col(i) * (utr(i) / s(i));

    // Backtracking on the residual norm.
    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 30; ++ls) {
      const VectorXd xt = rep.x - t * step;
      VectorXd rt;
      try {
        rt = residual(xt);
      } catch (const Error&) {
        t *= 0.5;
        continue;
      }
      const double nt = rt.lpNorm<Eigen::Infinity>();
      if (std::isfinite(nt) && (nt < rep.residual_norm || (rep.converged && nt <= rep.residual_norm))) {
        rep.x = xt;
        r = rt;
        rep.residual_norm = nt;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
  }
  rep.converged = rep.residual_norm < cfg.newton_tol;
  return rep;
}

VectorXd newton_solve(const VectorMap& residual, const VectorXd& guess,
                      const ToleranceConfig& cfg, const NewtonOptions& opts) {
  const NewtonReport rep = newton_attempt(residual, guess, cfg, opts);
  if (rep.singular) throw SingularJacobian("rank-deficient Jacobian in Newton step");
  if (!rep.converged)
    throw NoConvergence("residual " + std::to_string(rep.residual_norm) + " after " +
                        std::to_string(rep.iterations) + " iterations");
  return rep.x;
}

MatrixXd orthonormal_basis(const MatrixXd& a, double cutoff) {
  if (a.cols() == 0 || a.rows() == 0) return MatrixXd(a.rows(), 0);
  Eigen::JacobiSVD<MatrixXd> svd(a, Eigen::ComputeThinU);
  const VectorXd& s = svd.singularValues();
  const double thresh = cutoff * std::max(1.0, s(0));
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > thresh) ++rank;
  return svd.matrixU().leftCols(rank);
}

MatrixXd null_space(const MatrixXd& a, double cutoff) {
  const auto n = a.cols();
  if (a.rows() == 0) return MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<MatrixXd> svd(a, Eigen::ComputeFullV);
  const VectorXd& s = svd.singularValues();
  const double thresh = cutoff * std::max(1.0, s.size() ? s(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > thresh) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

int numerical_rank(const MatrixXd& a, double cutoff) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<MatrixXd> svd(a);
  const VectorXd& s = svd.singularValues();
  const double thresh = cutoff * std::max(1.0, s(0));
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > thresh) ++rank;
  return rank;
}

MatrixXd subspace_intersection(const MatrixXd& a, const MatrixXd& b, double cutoff) {
  if (a.rows() != b.rows()) throw DimError("subspace_intersection: ambient dimensions differ");
  const MatrixXd qa = orthonormal_basis(a, cutoff);
  const MatrixXd qb = orthonormal_basis(b, cutoff);
  if (qa.cols() == 0 || qb.cols() == 0) return MatrixXd(a.rows(), 0);
  MatrixXd stacked(a.rows(), qa.cols() + qb.cols());
  stacked << qa, -qb;
  // Columns are orthonormal blockwise, so singular values are on an absolute scale.
  Eigen::JacobiSVD<MatrixXd> svd(stacked, Eigen::ComputeFullV);
  const VectorXd& s = svd.singularValues();
  const auto k = stacked.cols();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cutoff) ++rank;
  const MatrixXd null = svd.matrixV().rightCols(k - rank);
  if (null.cols() == 0) return MatrixXd(a.rows(), 0);
  // Average the two representations of each intersection vector.
  const MatrixXd vecs = 0.5 * (qa * null.topRows(qa.cols()) + qb * null.bottomRows(qb.cols()));
  return orthonormal_basis(vecs, cutoff);
}

double subspace_distance(const MatrixXd& a, const MatrixXd& b) {
  const MatrixXd qa = orthonormal_basis(a);
  const MatrixXd qb = orthonormal_basis(b);
  if (qa.cols() != qb.cols()) return 1.0;
  if (qa.cols() == 0) return 0.0;
  // sin of the largest principal angle = |(I - Qa Qa^T) Qb|_2
  const MatrixXd resid = qb - qa * (qa.transpose() * qb);
  Eigen::JacobiSVD<MatrixXd> svd(resid);
  return svd.singularValues()(0);
}

SampleStream::SampleStream(std::uint64_t seed) : state_(seed) {}

// splitmix64
std::uint64_t SampleStream::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SampleStream::uniform(double lo, double hi) {
  const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

VectorXd SampleStream::box(int dim, double half_width) {
  VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = uniform(-half_width, half_width);
  return v;
}

VectorXd SampleStream::normal_vector(int dim) {
  VectorXd v(dim);
  for (int i = 0; i < dim; ++i) {
    // Box-Muller; one draw per component keeps the stream simple.
    double u1 = uniform(0.0, 1.0);
    const double u2 = uniform(0.0, 1.0);
    if (u1 < 1e-300) u1 = 1e-300;
    v(i) = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
  return v;
}

}  // namespace plie
