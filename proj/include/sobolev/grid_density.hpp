#pragma once

#include <functional>
#include <optional>

#include <Eigen/Dense>

namespace sobolev {

using Eigen::VectorXd;

enum class DensitySide { p, q };

/// A pair of 1-D densities (target p, source q) tabulated on a common,
/// strictly increasing grid, together with bounds a <= p, q <= b.
class GridDensity {
 public:
  // Validates: same lengths (>= 2), strictly increasing finite grid,
  // nonnegative densities, unit trapezoid mass within kMassTolerance, and
  // 0 < a <= min(p, q), max(p, q) <= b. Missing bounds are taken from the
  // tabulated extremes.
  static GridDensity make(VectorXd grid, VectorXd p, VectorXd q,
                          std::optional<double> lower_bound = std::nullopt,
                          std::optional<double> upper_bound = std::nullopt);

  // Shape checks only. Used where the density bounds are not needed
  // (e.g. quantile computations on compactly supported densities).
  static GridDensity unchecked(VectorXd grid, VectorXd p, VectorXd q, double lower_bound,
                               double upper_bound);

  // G uniform nodes on [lo, hi].
  static GridDensity tabulate(double lo, double hi, int G, const std::function<double(double)>& p,
                              const std::function<double(double)>& q,
                              std::optional<double> lower_bound = std::nullopt,
                              std::optional<double> upper_bound = std::nullopt);

  static constexpr double kMassTolerance = 1e-6;

  const VectorXd& grid() const { return grid_; }
  const VectorXd& p() const { return p_; }
  const VectorXd& q() const { return q_; }
  const VectorXd& values(DensitySide side) const { return side == DensitySide::p ? p_ : q_; }
  double lower_bound() const { return a_; }
  double upper_bound() const { return b_; }
  int size() const { return static_cast<int>(grid_.size()); }

  // Roles of p and q exchanged.
  GridDensity swapped() const;

 private:
  GridDensity(VectorXd grid, VectorXd p, VectorXd q, double a, double b);

  VectorXd grid_, p_, q_;
  double a_, b_;
};

// Trapezoid-rule weights for integrating a tabulated function.
VectorXd trapezoid_weights(const VectorXd& grid);
double trapezoid(const VectorXd& grid, const VectorXd& values);
// F(x_i) = integral from x_0 to x_i, F(x_0) = 0.
VectorXd cumulative_trapezoid(const VectorXd& grid, const VectorXd& values);

}  // namespace sobolev
