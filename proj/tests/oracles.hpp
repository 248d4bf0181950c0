#pragma once

// Scalar re-implementations used as independent references in the tests.

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "sobolev/feature_map.hpp"

namespace sobolev::testing {

inline double scalar_phi(const FeatureMap& fm, int j, const Eigen::VectorXd& x) {
  double r2 = 0.0, theta = fm.phases()(j);
  for (int a = 0; a < x.size(); ++a) {
    r2 += x(a) * x(a);
    theta += fm.frequencies()(j, a) * x(a);
  }
  const double s = fm.window_scale();
  return fm.amplitude() * std::exp(-r2 / (2.0 * s * s)) * std::cos(theta);
}

// d phi_j / d x_a by the product rule, written out term by term.
inline double scalar_dphi(const FeatureMap& fm, int j, int a, const Eigen::VectorXd& x) {
  double r2 = 0.0, theta = fm.phases()(j);
  for (int k = 0; k < x.size(); ++k) {
    r2 += x(k) * x(k);
    theta += fm.frequencies()(j, k) * x(k);
  }
  const double s = fm.window_scale();
  const double env = std::exp(-r2 / (2.0 * s * s));
  const double denv = -x(a) / (s * s) * env;
  return fm.amplitude() * (denv * std::cos(theta) - env * fm.frequencies()(j, a) * std::sin(theta));
}

inline Eigen::MatrixXd central_difference_jacobian(const FeatureMap& fm, const Eigen::VectorXd& x, double h) {
  Eigen::MatrixXd out(fm.dim_input(), fm.dim_feature());
  for (int a = 0; a < fm.dim_input(); ++a) {
    Eigen::VectorXd xp = x, xm = x;
    xp(a) += h;
    xm(a) -= h;
    for (int j = 0; j < fm.dim_feature(); ++j) out(a, j) = (scalar_phi(fm, j, xp) - scalar_phi(fm, j, xm)) / (2 * h);
  }
  return out;
}

inline Eigen::MatrixXd random_normal(std::mt19937_64& rng, int rows, int cols, double sd = 1.0) {
  std::normal_distribution<double> n(0.0, sd);
  Eigen::MatrixXd out(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out(i, j) = n(rng);
  return out;
}

// B B^T / k with B m x k.
inline Eigen::MatrixXd random_psd(std::mt19937_64& rng, int m, int k) {
  const Eigen::MatrixXd B = random_normal(rng, m, k);
  Eigen::MatrixXd D = B * B.transpose() / k;
  return 0.5 * (D + D.transpose());
}

inline Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& D) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(D);
  const Eigen::VectorXd r = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * r.asDiagonal() * eig.eigenvectors().transpose();
}

}  // namespace sobolev::testing
