#pragma once

#include <Eigen/Dense>

#include "sobolev/grid_density.hpp"

namespace sobolev {

/// Exact 1-D Sobolev discrepancy. With zero flux at both ends the advection
/// equation p - q = -(q u')' integrates to q u' = -(F_p - F_q), so
///
///   S^2 = integral (F_p - F_q)^2 / q dx,
///
/// evaluated with trapezoid CDFs and a trapezoid outer integral.
double sobolev_1d(const GridDensity& g);

// Velocity u' = -(F_p - F_q) / q at each node.
VectorXd advection_velocity_1d(const GridDensity& g);

// Potential u with u(x_0) = 0, integrated from advection_velocity_1d.
VectorXd advection_potential_1d(const GridDensity& g);

// max over interior nodes of |p - q + (q u')'|, with the conservative
// three-point stencil [q_{i+1/2}(u_{i+1}-u_i) - q_{i-1/2}(u_i-u_{i-1})] / h^2.
// Requires a uniform grid.
double pde_residual(const GridDensity& g, const VectorXd& u_values);

/// W2 between the two densities through their quantile functions:
///
///   W2^2 = integral_0^1 (F_p^{-1}(t) - F_q^{-1}(t))^2 dt,
///
/// with piecewise-linear inversion of the (mass-normalized) trapezoid CDFs and
/// a G-point midpoint rule in t. Zero density is allowed only outside the
/// support; an interior gap makes the CDF non-invertible.
double wasserstein2_1d(const GridDensity& g);

struct BoundsCheck {
  double s = 0.0;
  double w2 = 0.0;
  bool lower_ok = false;  // sqrt(a/b) S <= W2 + tol
  bool upper_ok = false;  // W2 <= 2 S + tol
};

BoundsCheck check_bounds(const GridDensity& g, double tol = 1e-4);

}  // namespace sobolev
