#include "sobolev/grid_density.hpp"

#include <cmath>
#include <string>

#include "sobolev/errors.hpp"

namespace sobolev {

namespace {

void check_shapes(const VectorXd& grid, const VectorXd& p, const VectorXd& q) {
  if (grid.size() < 2) throw InvalidParameter("grid needs at least 2 points");
  if (p.size() != grid.size() || q.size() != grid.size())
    throw ShapeError("grid, p and q must have equal lengths");
  if (!grid.allFinite() || !p.allFinite() || !q.allFinite())
    throw DomainError("grid and density values must be finite");
  for (Eigen::Index i = 1; i < grid.size(); ++i) {
    if (!(grid(i) > grid(i - 1)))
      throw InvalidParameter("grid must be strictly increasing (index " + std::to_string(i) + ")");
  }
}

}  // namespace

GridDensity::GridDensity(VectorXd grid, VectorXd p, VectorXd q, double a, double b)
    : grid_(std::move(grid)), p_(std::move(p)), q_(std::move(q)), a_(a), b_(b) {}

GridDensity GridDensity::make(VectorXd grid, VectorXd p, VectorXd q, std::optional<double> lower_bound,
                              std::optional<double> upper_bound) {
  check_shapes(grid, p, q);
  if (p.minCoeff() < 0.0 || q.minCoeff() < 0.0) throw InvalidParameter("densities must be nonnegative");
  for (auto side : {DensitySide::p, DensitySide::q}) {
    const double mass = trapezoid(grid, side == DensitySide::p ? p : q);
    if (std::abs(mass - 1.0) > kMassTolerance)
      throw InvalidParameter(std::string("density ") + (side == DensitySide::p ? "p" : "q") +
                             " has mass " + std::to_string(mass) + ", expected 1");
  }
  const double lo = std::min(p.minCoeff(), q.minCoeff());
  const double hi = std::max(p.maxCoeff(), q.maxCoeff());
  const double a = lower_bound.value_or(lo);
  const double b = upper_bound.value_or(hi);
  if (!(a > 0.0)) throw InvalidParameter("lower bound a must be positive, got " + std::to_string(a));
  if (!(a <= b)) throw InvalidParameter("lower bound a exceeds upper bound b");
  if (lo < a) throw InvalidParameter("density falls below the lower bound a");
  if (hi > b) throw InvalidParameter("density exceeds the upper bound b");
  return GridDensity(std::move(grid), std::move(p), std::move(q), a, b);
}

GridDensity GridDensity::unchecked(VectorXd grid, VectorXd p, VectorXd q, double lower_bound,
                                   double upper_bound) {
  check_shapes(grid, p, q);
  return GridDensity(std::move(grid), std::move(p), std::move(q), lower_bound, upper_bound);
}

GridDensity GridDensity::tabulate(double lo, double hi, int G, const std::function<double(double)>& p,
                                  const std::function<double(double)>& q,
                                  std::optional<double> lower_bound,
                                  std::optional<double> upper_bound) {
  if (G < 2 || !(hi > lo)) throw InvalidParameter("tabulate needs G >= 2 and hi > lo");
  VectorXd x = VectorXd::LinSpaced(G, lo, hi);
  VectorXd pv(G), qv(G);
  for (int i = 0; i < G; ++i) {
    pv(i) = p(x(i));
    qv(i) = q(x(i));
  }
  return make(std::move(x), std::move(pv), std::move(qv), lower_bound, upper_bound);
}

GridDensity GridDensity::swapped() const { return GridDensity(grid_, q_, p_, a_, b_); }

VectorXd trapezoid_weights(const VectorXd& grid) {
  const Eigen::Index n = grid.size();
  VectorXd w = VectorXd::Zero(n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const double h = grid(i + 1) - grid(i);
    w(i) += 0.5 * h;
    w(i + 1) += 0.5 * h;
  }
  return w;
}

double trapezoid(const VectorXd& grid, const VectorXd& values) {
  double s = 0.0;
  for (Eigen::Index i = 0; i + 1 < grid.size(); ++i)
    s += 0.5 * (grid(i + 1) - grid(i)) * (values(i) + values(i + 1));
  return s;
}

VectorXd cumulative_trapezoid(const VectorXd& grid, const VectorXd& values) {
  VectorXd F(grid.size());
  F(0) = 0.0;
  for (Eigen::Index i = 1; i < grid.size(); ++i)
    F(i) = F(i - 1) + 0.5 * (grid(i) - grid(i - 1)) * (values(i) + values(i - 1));
  return F;
}

}  // namespace sobolev
