#include "plie/charts.hpp"

namespace plie {

MatrixXd ChartedSpace::transition(const Point& base, const VectorXd& y,
                                  const ToleranceConfig& cfg) const {
  const Point q = retract(base, y);
  return differential([&](const VectorXd& z) { return local(base, retract(q, z)); },
                      VectorXd::Zero(dim()), cfg);
}

Point EuclideanSpace::retract(const Point& base, const VectorXd& y) const {
  if (y.size() != n_) throw DimError("euclidean retract: dimension mismatch");
  return Point{MatrixXd(base.at(0) + y)};
}

VectorXd EuclideanSpace::local(const Point& base, const Point& q) const {
  return q.at(0) - base.at(0);
}

Point GroupSpace::retract(const Point& base, const VectorXd& y) const {
  return Point{MatrixXd(base.at(0) * group_->exp(y))};
}

VectorXd GroupSpace::local(const Point& base, const Point& q) const {
  return group_->log(base.at(0).inverse() * q.at(0));
}

MatrixXd GroupSpace::transition(const Point&, const VectorXd& y, const ToleranceConfig&) const {
  const int n = dim();
  const MatrixXd m = -group_->algebra().ad(y);
  MatrixXd phi = MatrixXd::Identity(n, n);
  MatrixXd term = MatrixXd::Identity(n, n);
  for (int k = 1; k < 30; ++k) {
    term = term * m / static_cast<double>(k + 1);
    phi += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  return phi.inverse();
}

ProductSpace::ProductSpace(std::vector<SpacePtr> factors) : factors_(std::move(factors)) {
  for (const auto& f : factors_) {
    offsets_.push_back(dim_);
    part_offsets_.push_back(parts_);
    dim_ += f->dim();
    parts_ += f->parts();
  }
}

Point ProductSpace::factor(const Point& q, std::size_t i) const {
  if (static_cast<int>(q.size()) != parts_) throw DimError("product point has wrong part count");
  return Point(q.begin() + part_offsets_[i], q.begin() + part_offsets_[i] + factors_[i]->parts());
}

Point ProductSpace::join(const Point& a, const Point& b) {
  Point out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Point ProductSpace::retract(const Point& base, const VectorXd& y) const {
  if (y.size() != dim_) throw DimError("product retract: dimension mismatch");
  Point out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const Point p = factors_[i]->retract(factor(base, i), y.segment(offsets_[i], factors_[i]->dim()));
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

VectorXd ProductSpace::local(const Point& base, const Point& q) const {
  VectorXd y(dim_);
  for (std::size_t i = 0; i < factors_.size(); ++i)
    y.segment(offsets_[i], factors_[i]->dim()) = factors_[i]->local(factor(base, i), factor(q, i));
  return y;
}

MatrixXd ProductSpace::transition(const Point& base, const VectorXd& y,
                                  const ToleranceConfig& cfg) const {
  MatrixXd t = MatrixXd::Zero(dim_, dim_);
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const int d = factors_[i]->dim();
    t.block(offsets_[i], offsets_[i], d, d) =
        factors_[i]->transition(factor(base, i), y.segment(offsets_[i], d), cfg);
  }
  return t;
}

}  // namespace plie
