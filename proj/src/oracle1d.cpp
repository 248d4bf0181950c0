#include "sobolev/oracle1d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sobolev/errors.hpp"

namespace sobolev {

namespace {

void require_lower_bound(const GridDensity& g) {
  const double a = g.lower_bound();
  if (!(a > 0.0)) throw InvalidParameter("lower bound a must be positive");
  for (int i = 0; i < g.size(); ++i) {
    if (g.q()(i) < a)
      throw InvalidParameter("q falls below the lower bound a at grid index " + std::to_string(i));
  }
}

// Mass-normalized CDF; checks that it is strictly increasing on the support.
VectorXd invertible_cdf(const VectorXd& grid, const VectorXd& density, const char* name) {
  if (density.minCoeff() < 0.0) throw InvalidParameter(std::string("density ") + name + " is negative");
  VectorXd F = cumulative_trapezoid(grid, density);
  const double mass = F(F.size() - 1);
  if (!(mass > 0.0)) throw InvalidParameter(std::string("density ") + name + " has zero mass");
  F /= mass;
  const Eigen::Index n = F.size();
  Eigen::Index first = 0;
  while (first + 1 < n && !(F(first + 1) > 0.0)) ++first;
  Eigen::Index last = n - 1;
  while (last > 0 && !(F(last - 1) < F(n - 1))) --last;
  for (Eigen::Index i = first; i < last; ++i) {
    if (!(F(i + 1) > F(i)))
      throw InvalidParameter(std::string("CDF of ") + name + " is flat inside its support near x = " +
                             std::to_string(grid(i)) + " (zero density)");
  }
  F(n - 1) = 1.0;
  return F;
}

// Smallest x with F(x) >= t under linear interpolation of F.
double quantile(const VectorXd& grid, const VectorXd& F, double t) {
  const double* begin = F.data();
  const double* end = F.data() + F.size();
  const Eigen::Index i = std::lower_bound(begin, end, t) - begin;
  if (i == 0) return grid(0);
  if (i >= F.size()) return grid(F.size() - 1);
  const double span = F(i) - F(i - 1);
  return grid(i - 1) + (t - F(i - 1)) / span * (grid(i) - grid(i - 1));
}

}  // namespace

VectorXd advection_velocity_1d(const GridDensity& g) {
  require_lower_bound(g);
  const VectorXd diff = cumulative_trapezoid(g.grid(), g.p()) - cumulative_trapezoid(g.grid(), g.q());
  return -diff.cwiseQuotient(g.q());
}

double sobolev_1d(const GridDensity& g) {
  require_lower_bound(g);
  const VectorXd diff = cumulative_trapezoid(g.grid(), g.p()) - cumulative_trapezoid(g.grid(), g.q());
  const VectorXd integrand = diff.cwiseAbs2().cwiseQuotient(g.q());
  return std::sqrt(std::max(0.0, trapezoid(g.grid(), integrand)));
}

VectorXd advection_potential_1d(const GridDensity& g) {
  return cumulative_trapezoid(g.grid(), advection_velocity_1d(g));
}

double pde_residual(const GridDensity& g, const VectorXd& u_values) {
  const int n = g.size();
  if (n < 3) throw InvalidParameter("pde_residual needs at least 3 grid points");
  if (u_values.size() != n) throw ShapeError("u_values length does not match the grid");
  if (!u_values.allFinite()) throw DomainError("u_values must be finite");
  const VectorXd& x = g.grid();
  const double h = (x(n - 1) - x(0)) / (n - 1);
  for (int i = 1; i < n; ++i) {
    if (std::abs((x(i) - x(i - 1)) - h) > 1e-6 * h) throw InvalidParameter("pde_residual requires a uniform grid");
  }
  const VectorXd& p = g.p();
  const VectorXd& q = g.q();
  double worst = 0.0;
  for (int i = 1; i + 1 < n; ++i) {
    const double q_right = 0.5 * (q(i) + q(i + 1));
    const double q_left = 0.5 * (q(i) + q(i - 1));
    const double flux_div = (q_right * (u_values(i + 1) - u_values(i)) - q_left * (u_values(i) - u_values(i - 1))) / (h * h);
    worst = std::max(worst, std::abs(p(i) - q(i) + flux_div));
  }
  return worst;
}

double wasserstein2_1d(const GridDensity& g) {
  const VectorXd Fp = invertible_cdf(g.grid(), g.p(), "p");
  const VectorXd Fq = invertible_cdf(g.grid(), g.q(), "q");
  const int n = g.size();
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    const double t = (k + 0.5) / n;
    const double gap = quantile(g.grid(), Fp, t) - quantile(g.grid(), Fq, t);
    acc += gap * gap;
  }
  return std::sqrt(acc / n);
}

BoundsCheck check_bounds(const GridDensity& g, double tol) {
  BoundsCheck out;
  out.s = sobolev_1d(g);
  out.w2 = wasserstein2_1d(g);
  const double ratio = std::sqrt(g.lower_bound() / g.upper_bound());
  out.lower_ok = ratio * out.s <= out.w2 + tol;
  out.upper_ok = out.w2 <= 2.0 * out.s + tol;
  return out;
}

}  // namespace sobolev
