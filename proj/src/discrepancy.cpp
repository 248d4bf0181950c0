#include "sobolev/discrepancy.hpp"

#include <cmath>
#include <string>

#include "sobolev/errors.hpp"

namespace sobolev {

namespace {

void check_system(const MatrixXd& D, const VectorXd& delta, double lambda) {
  if (D.rows() != D.cols()) throw ShapeError("gramian must be square");
  if (delta.size() != D.rows())
    throw ShapeError("delta has length " + std::to_string(delta.size()) + ", gramian is " +
                     std::to_string(D.rows()) + " x " + std::to_string(D.cols()));
  if (!std::isfinite(lambda) || lambda < 0.0) throw InvalidParameter("lambda must be finite and >= 0");
  if (!D.allFinite() || !delta.allFinite()) throw DomainError("gramian and delta must be finite");
  const double scale = std::max(1.0, D.cwiseAbs().maxCoeff());
  if ((D - D.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw InvalidParameter("gramian is not symmetric");
}

double min_eigenvalue(const MatrixXd& D) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(D, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

Eigen::LLT<MatrixXd> factorize(const MatrixXd& D, double lambda) {
  if (lambda == 0.0) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(D, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(lo > kRankTolerance * hi))
      throw SingularGramian("gramian is numerically singular at lambda = 0 (min eigenvalue " +
                                std::to_string(lo) + ")",
                            lo);
  }
  MatrixXd A = D;
  A.diagonal().array() += lambda;
  Eigen::LLT<MatrixXd> llt(A);
  if (llt.info() != Eigen::Success) {
    const double lo = min_eigenvalue(D);
    throw SingularGramian("D + lambda I is not positive definite (min eigenvalue of D " +
                              std::to_string(lo) + ")",
                          lo);
  }
  return llt;
}

}  // namespace

WitnessSolution solve_witness(const MatrixXd& D, const VectorXd& delta, double lambda) {
  check_system(D, delta, lambda);
  WitnessSolution w;
  w.lambda = lambda;
  if (delta.isZero(0.0)) {
    w.coeffs = VectorXd::Zero(delta.size());
    return w;
  }
  const auto llt = factorize(D, lambda);
  w.coeffs = llt.solve(delta);
  w.value = std::sqrt(std::max(0.0, delta.dot(w.coeffs)));
  w.kinetic = w.coeffs.dot(D * w.coeffs);
  w.penalty = lambda * w.coeffs.squaredNorm();
  return w;
}

double objective(const MatrixXd& D, const VectorXd& delta, const VectorXd& u, double lambda) {
  if (D.rows() != D.cols() || delta.size() != D.rows() || u.size() != D.rows())
    throw ShapeError("objective: inconsistent shapes");
  return 2.0 * u.dot(delta) - u.dot(D * u) - lambda * u.squaredNorm();
}

double discrepancy_value(const MatrixXd& D, const VectorXd& delta, double lambda) {
  check_system(D, delta, lambda);
  if (delta.isZero(0.0)) return 0.0;
  const auto llt = factorize(D, lambda);
  return llt.matrixL().solve(delta).norm();
}

VectorXd witness_function(const WitnessSolution& w) {
  if (!(w.value > 0.0))
    throw DegenerateWitness("discrepancy is zero: the distributions are indistinguishable in the feature space");
  return w.coeffs / w.value;
}

double evaluate_witness(const FeatureMap& fm, const VectorXd& coeffs, const ConstVectorRef& x) {
  if (coeffs.size() != fm.dim_feature()) throw ShapeError("coefficient length does not match feature dimension");
  return coeffs.dot(fm.evaluate(x));
}

VectorXd velocity_field(const FeatureMap& fm, const VectorXd& coeffs, const ConstVectorRef& x) {
  if (coeffs.size() != fm.dim_feature()) throw ShapeError("coefficient length does not match feature dimension");
  return fm.jacobian(x) * coeffs;
}

}  // namespace sobolev
