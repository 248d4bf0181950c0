#pragma once

#include <Eigen/Dense>

#include "sobolev/feature_map.hpp"

namespace sobolev {

// Relative singularity threshold: an eigenvalue of D counts as zero when it is
// at most kRankTolerance * (largest eigenvalue).
inline constexpr double kRankTolerance = 1e-10;

/// Closed-form maximizer of
///
///   L(u, lambda) = 2 <u, delta> - u^T (D + lambda I) u,
///
/// i.e. u = (D + lambda I)^{-1} delta, where delta = mu_p - mu_q and D is the
/// derivative gramian of the source distribution q. value^2 = <delta, u> and
/// splits into the kinetic energy u^T D u plus the penalty lambda |u|^2.
struct WitnessSolution {
  VectorXd coeffs;
  double lambda = 0.0;
  double value = 0.0;
  double kinetic = 0.0;
  double penalty = 0.0;
};

// lambda = 0 is accepted only when D passes the rank check; otherwise
// SingularGramian is thrown with the smallest eigenvalue of D.
WitnessSolution solve_witness(const MatrixXd& D, const VectorXd& delta, double lambda);

double objective(const MatrixXd& D, const VectorXd& delta, const VectorXd& u, double lambda);

// |(D + lambda I)^{-1/2} delta|, through the Cholesky factor.
double discrepancy_value(const MatrixXd& D, const VectorXd& delta, double lambda);

// coeffs / value: the unit-constraint witness. DegenerateWitness when value = 0.
VectorXd witness_function(const WitnessSolution& w);

// u(x) = <coeffs, phi(x)>
double evaluate_witness(const FeatureMap& fm, const VectorXd& coeffs, const ConstVectorRef& x);

// grad u(x) = J(x) coeffs
VectorXd velocity_field(const FeatureMap& fm, const VectorXd& coeffs, const ConstVectorRef& x);

}  // namespace sobolev
