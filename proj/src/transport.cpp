#include "sobolev/transport.hpp"

#include <cmath>
#include <string>

#include "sobolev/discrepancy.hpp"
#include "sobolev/errors.hpp"

namespace sobolev {

double Spectrum::rank_threshold() const {
  if (eigenvalues.size() == 0) return 0.0;
  return kRankTolerance * std::max(0.0, eigenvalues(0));
}

Spectrum spectral_decomposition(const MatrixXd& D) {
  if (D.rows() != D.cols() || D.rows() == 0) throw ShapeError("gramian must be square and nonempty");
  if (!D.allFinite()) throw DomainError("gramian must be finite");
  const double scale = std::max(1.0, D.cwiseAbs().maxCoeff());
  if ((D - D.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw InvalidParameter("gramian is not symmetric");

  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(D);
  if (eig.info() != Eigen::Success) throw Error("symmetric eigensolver did not converge");
  const Eigen::Index m = D.rows();

  Spectrum s;
  s.eigenvalues = eig.eigenvalues().reverse();
  s.eigenvectors = eig.eigenvectors().rowwise().reverse();

  const double top = std::max(0.0, s.eigenvalues(0));
  for (Eigen::Index j = 0; j < m; ++j) {
    double& ev = s.eigenvalues(j);
    if (ev < 0.0) {
      if (ev < -kRankTolerance * top)
        throw InvalidParameter("gramian is not positive semi-definite (eigenvalue " + std::to_string(ev) + ")");
      ev = 0.0;
    }
    Eigen::Index k;
    s.eigenvectors.col(j).cwiseAbs().maxCoeff(&k);
    if (s.eigenvectors(k, j) < 0.0) s.eigenvectors.col(j) *= -1.0;
  }
  return s;
}

TransportDecomposition transport_coefficients(const Spectrum& s, const VectorXd& delta, double lambda) {
  if (delta.size() != s.eigenvalues.size()) throw ShapeError("delta length does not match spectrum size");
  if (!std::isfinite(lambda) || lambda < 0.0) throw InvalidParameter("lambda must be finite and >= 0");
  TransportDecomposition t;
  t.lambda = lambda;
  t.raw_alignments = s.eigenvectors.transpose() * delta;
  if (lambda == 0.0) {
    const double lo = s.eigenvalues.minCoeff();
    if (!(lo > s.rank_threshold()))
      throw SingularGramian("zero eigenvalue with lambda = 0 (min eigenvalue " + std::to_string(lo) + ")", lo);
  }
  t.coefficients = t.raw_alignments.array() / (s.eigenvalues.array() + lambda);
  return t;
}

VectorXd reconstruct_coefficients(const Spectrum& s, const TransportDecomposition& t) {
  if (t.coefficients.size() != s.eigenvectors.cols()) throw ShapeError("decomposition does not match spectrum");
  return s.eigenvectors * t.coefficients;
}

VectorXd principal_direction(const FeatureMap& fm, const Spectrum& s, int j, const ConstVectorRef& x) {
  if (s.eigenvectors.rows() != fm.dim_feature()) throw ShapeError("spectrum does not match feature dimension");
  if (j < 0 || j >= s.eigenvalues.size()) throw InvalidParameter("direction index out of range");
  const double ev = s.eigenvalues(j);
  if (!(ev > s.rank_threshold()))
    throw DegenerateDirection("eigenvalue " + std::to_string(ev) + " of direction " + std::to_string(j) +
                              " is below the rank tolerance");
  return fm.jacobian(x) * (s.eigenvectors.col(j) / std::sqrt(ev));
}

MatrixXd modal_velocities(const FeatureMap& fm, const Spectrum& s, const VectorXd& delta, double lambda,
                          const ConstVectorRef& x) {
  if (s.eigenvectors.rows() != fm.dim_feature()) throw ShapeError("spectrum does not match feature dimension");
  const TransportDecomposition t = transport_coefficients(s, delta, lambda);
  return (fm.jacobian(x) * s.eigenvectors) * t.coefficients.asDiagonal();
}

VectorXd filtered_velocity(const FeatureMap& fm, const Spectrum& s, const VectorXd& delta, double lambda,
                           const ConstVectorRef& x) {
  return modal_velocities(fm, s, delta, lambda, x).rowwise().sum();
}

}  // namespace sobolev
