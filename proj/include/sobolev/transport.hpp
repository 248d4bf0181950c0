#pragma once

#include <Eigen/Dense>

#include "sobolev/feature_map.hpp"

namespace sobolev {

/// Eigendecomposition D = Q diag(eigenvalues) Q^T of a derivative gramian.
///
/// Eigenvalues are sorted descending and clamped to 0 when they lie within
/// kRankTolerance * max of zero. Each eigenvector is signed so that its
/// largest-magnitude entry is positive.
struct Spectrum {
  VectorXd eigenvalues;
  MatrixXd eigenvectors;  // columns psi_j

  // Eigenvalues at or below this count as zero.
  double rank_threshold() const;
};

struct TransportDecomposition {
  VectorXd coefficients;    // <psi_j, delta> / (lambda_j + lambda)
  VectorXd raw_alignments;  // <psi_j, delta>
  double lambda = 0.0;
};

Spectrum spectral_decomposition(const MatrixXd& D);

TransportDecomposition transport_coefficients(const Spectrum& s, const VectorXd& delta, double lambda);

// sum_j c_j psi_j, which equals (D + lambda I)^{-1} delta.
VectorXd reconstruct_coefficients(const Spectrum& s, const TransportDecomposition& t);

// J(x) psi_j / sqrt(lambda_j). 0-based j.
VectorXd principal_direction(const FeatureMap& fm, const Spectrum& s, int j, const ConstVectorRef& x);

// d x m; column j is the contribution c_j J(x) psi_j of mode j to the velocity.
MatrixXd modal_velocities(const FeatureMap& fm, const Spectrum& s, const VectorXd& delta, double lambda,
                          const ConstVectorRef& x);

// sum_j c_j J(x) psi_j
VectorXd filtered_velocity(const FeatureMap& fm, const Spectrum& s, const VectorXd& delta, double lambda,
                           const ConstVectorRef& x);

}  // namespace sobolev
