#pragma once

#include <memory>
#include <vector>

#include "plie/matrix_group.hpp"

namespace plie {

/// A point of any charted space: one matrix per factor (column vectors for
/// Euclidean factors, nothing for a point).
using Point = std::vector<MatrixXd>;

/// Coordinates around every point. The natural chart at q is y -> retract(q, y),
/// and local(q, .) is its inverse.
class ChartedSpace {
 public:
  virtual ~ChartedSpace() = default;

  virtual int dim() const = 0;
  /// Number of matrices a Point of this space carries.
  virtual int parts() const = 0;
  virtual Point retract(const Point& base, const VectorXd& y) const = 0;
  virtual VectorXd local(const Point& base, const Point& q) const = 0;

  /// Derivative at z = 0 of z -> local(base, retract(retract(base, y), z)):
  /// maps natural-chart vectors at retract(base, y) into the chart at base.
  virtual MatrixXd transition(const Point& base, const VectorXd& y,
                              const ToleranceConfig& cfg) const;
};

using SpacePtr = std::shared_ptr<const ChartedSpace>;

class EuclideanSpace : public ChartedSpace {
 public:
  explicit EuclideanSpace(int n) : n_(n) {}
  int dim() const override { return n_; }
  int parts() const override { return 1; }
  Point retract(const Point& base, const VectorXd& y) const override;
  VectorXd local(const Point& base, const Point& q) const override;
  MatrixXd transition(const Point&, const VectorXd&, const ToleranceConfig&) const override {
    return MatrixXd::Identity(n_, n_);
  }

 private:
  int n_;
};

/// A single point: zero-dimensional, no matrices.
class PointSpace : public ChartedSpace {
 public:
  int dim() const override { return 0; }
  int parts() const override { return 0; }
  Point retract(const Point&, const VectorXd&) const override { return {}; }
  VectorXd local(const Point&, const Point&) const override { return VectorXd(0); }
  MatrixXd transition(const Point&, const VectorXd&, const ToleranceConfig&) const override {
    return MatrixXd(0, 0);
  }
};

/// Exp-charts y -> base * exp(sum y_i b_i).
class GroupSpace : public ChartedSpace {
 public:
  explicit GroupSpace(GroupPtr group) : group_(std::move(group)) {}
  int dim() const override { return group_->dim(); }
  int parts() const override { return 1; }
  Point retract(const Point& base, const VectorXd& y) const override;
  VectorXd local(const Point& base, const Point& q) const override;
  /// Closed form [sum_k (-ad_y)^k / (k+1)!]^{-1}.
  MatrixXd transition(const Point& base, const VectorXd& y,
                      const ToleranceConfig& cfg) const override;
  const GroupPtr& group() const { return group_; }

 private:
  GroupPtr group_;
};

class ProductSpace : public ChartedSpace {
 public:
  explicit ProductSpace(std::vector<SpacePtr> factors);
  int dim() const override { return dim_; }
  int parts() const override { return parts_; }
  Point retract(const Point& base, const VectorXd& y) const override;
  VectorXd local(const Point& base, const Point& q) const override;
  MatrixXd transition(const Point& base, const VectorXd& y,
                      const ToleranceConfig& cfg) const override;

  const std::vector<SpacePtr>& factors() const { return factors_; }
  /// The matrices of factor i.
  Point factor(const Point& q, std::size_t i) const;
  /// Offset of factor i in chart coordinates.
  int offset(std::size_t i) const { return offsets_[i]; }
  static Point join(const Point& a, const Point& b);

 private:
  std::vector<SpacePtr> factors_;
  std::vector<int> offsets_;
  std::vector<int> part_offsets_;
  int dim_ = 0;
  int parts_ = 0;
};

inline Point group_point(const MatrixXd& g) { return Point{g}; }
inline Point vector_point(const VectorXd& v) { return Point{MatrixXd(v)}; }

}  // namespace plie
