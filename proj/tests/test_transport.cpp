#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sobolev/discrepancy.hpp"
#include "sobolev/embeddings.hpp"
#include "sobolev/errors.hpp"
#include "sobolev/transport.hpp"

using namespace sobolev;
using sobolev::testing::random_normal;
using sobolev::testing::random_psd;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(v.size());
  int i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

Eigen::MatrixXd reconstruct(const Spectrum& s) {
  return s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.transpose();
}

}  // namespace

TEST(Spectrum, DiagonalExample) {
  const Spectrum s = spectral_decomposition(vec({1, 3}).asDiagonal());
  EXPECT_EQ(s.eigenvalues, vec({3, 1}));
  EXPECT_NEAR((s.eigenvectors.col(0) - vec({0, 1})).norm(), 0.0, 1e-15);
  EXPECT_NEAR((s.eigenvectors.col(1) - vec({1, 0})).norm(), 0.0, 1e-15);
}

TEST(Spectrum, IdentityReconstructs) {
  const Spectrum s = spectral_decomposition(Eigen::MatrixXd::Identity(4, 4));
  EXPECT_LE((s.eigenvalues - Eigen::VectorXd::Ones(4)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE((reconstruct(s) - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Spectrum, RandomPsdInvariants) {
  std::mt19937_64 rng(1);
  const Eigen::MatrixXd D = random_psd(rng, 16, 20);
  const Spectrum s = spectral_decomposition(D);
  EXPECT_LE((reconstruct(s) - D).norm() / D.norm(), 1e-10);
  EXPECT_LE((s.eigenvectors.transpose() * s.eigenvectors - Eigen::MatrixXd::Identity(16, 16)).cwiseAbs().maxCoeff(), 1e-10);
  for (int j = 0; j < 16; ++j) {
    EXPECT_LE((D * s.eigenvectors.col(j) - s.eigenvalues(j) * s.eigenvectors.col(j)).cwiseAbs().maxCoeff(), 1e-8);
    if (j > 0) EXPECT_GE(s.eigenvalues(j - 1), s.eigenvalues(j));
    Eigen::Index k;
    s.eigenvectors.col(j).cwiseAbs().maxCoeff(&k);
    EXPECT_GT(s.eigenvectors(k, j), 0.0);
  }
}

TEST(Spectrum, RepeatedEigenvalueProjectorIsStable) {
  std::mt19937_64 rng(2);
  const Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(random_normal(rng, 5, 5)).householderQ();
  const Eigen::MatrixXd D = Q * vec({4, 2, 2, 1, 0.5}).asDiagonal() * Q.transpose();
  const Spectrum s = spectral_decomposition(0.5 * (D + D.transpose()));
  const Eigen::MatrixXd expected = Q.col(1) * Q.col(1).transpose() + Q.col(2) * Q.col(2).transpose();
  const Eigen::MatrixXd got = s.eigenvectors.col(1) * s.eigenvectors.col(1).transpose() +
                              s.eigenvectors.col(2) * s.eigenvectors.col(2).transpose();
  EXPECT_LE((got - expected).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Spectrum, RejectsAsymmetricInput) {
  Eigen::MatrixXd D = Eigen::MatrixXd::Identity(3, 3);
  D(0, 2) = 0.1;
  EXPECT_THROW(spectral_decomposition(D), InvalidParameter);
  EXPECT_THROW(spectral_decomposition(Eigen::MatrixXd::Zero(2, 3)), ShapeError);
}

TEST(TransportCoefficients, Examples) {
  const Spectrum s = spectral_decomposition(vec({2, 1}).asDiagonal());
  const TransportDecomposition zero = transport_coefficients(s, Eigen::VectorXd::Zero(2), 0.1);
  EXPECT_EQ(zero.coefficients, Eigen::VectorXd::Zero(2));
  EXPECT_EQ(zero.raw_alignments, Eigen::VectorXd::Zero(2));

  const TransportDecomposition t = transport_coefficients(s, vec({1, 1}), 0.0);
  EXPECT_LE((reconstruct_coefficients(s, t) - vec({0.5, 1})).cwiseAbs().maxCoeff(), 1e-15);

  const TransportDecomposition big = transport_coefficients(s, vec({1, 1}), 1e6);
  for (int j = 0; j < 2; ++j) EXPECT_NEAR(big.coefficients(j), big.raw_alignments(j) / 1e6, 1e-4 * std::abs(big.raw_alignments(j)) / 1e6);

  const Spectrum singular = spectral_decomposition(vec({1, 0}).asDiagonal());
  EXPECT_THROW(transport_coefficients(singular, vec({1, 1}), 0.0), SingularGramian);
  EXPECT_THROW(transport_coefficients(s, vec({1, 1}), -1.0), InvalidParameter);
}

TEST(TransportProperty, SpectralPathMatchesDirectSolve) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    const Eigen::MatrixXd D = random_psd(rng, 12, 6 + t);
    const Eigen::VectorXd delta = random_normal(rng, 12, 1).col(0);
    const double lambda = std::pow(10.0, -3 + t % 3);
    const Spectrum s = spectral_decomposition(D);
    const Eigen::VectorXd via_spectrum = reconstruct_coefficients(s, transport_coefficients(s, delta, lambda));
    const Eigen::VectorXd direct = solve_witness(D, delta, lambda).coeffs;
    EXPECT_LE((via_spectrum - direct).norm() / direct.norm(), 1e-8);
  }
}

TEST(TransportProperty, FilteringShrinksEveryCoefficient) {
  std::mt19937_64 rng(4);
  const Spectrum s = spectral_decomposition(random_psd(rng, 8, 8));
  const Eigen::VectorXd delta = random_normal(rng, 8, 1).col(0);
  Eigen::VectorXd prev = transport_coefficients(s, delta, 1e-4).coefficients.cwiseAbs();
  for (double lambda : {1e-3, 1e-2, 1e-1, 1.0, 10.0}) {
    const Eigen::VectorXd cur = transport_coefficients(s, delta, lambda).coefficients.cwiseAbs();
    for (int j = 0; j < 8; ++j) EXPECT_LE(cur(j), prev(j));
    prev = cur;
  }
}

TEST(PrincipalDirection, HandComputedDiagonalCase) {
  Eigen::MatrixXd omega(2, 1);
  omega << 1.0, -0.5;
  const FeatureMap fm(omega, vec({0.2, 1.0}), 1.5, 0.8);
  const Spectrum s = spectral_decomposition(vec({4, 1}).asDiagonal());
  const Eigen::VectorXd x = vec({0.3});
  const Eigen::MatrixXd J = fm.jacobian(x);
  EXPECT_NEAR(principal_direction(fm, s, 0, x)(0), J(0, 0) / 2.0, 1e-15);
  EXPECT_NEAR(principal_direction(fm, s, 1, x)(0), J(0, 1), 1e-15);
  EXPECT_THROW(principal_direction(fm, s, 2, x), InvalidParameter);
}

TEST(PrincipalDirection, OrthonormalUnderSourceDensity) {
  const FeatureMap fm = make_feature_map(1, 6, 1.0, 2.0, 5);
  auto p = [](double x) { return 1.0 + 0.5 * (2 * x - 1); };
  auto q = [](double x) { return 1.0 + 0.3 * std::cos(2 * M_PI * x); };
  const GridDensity g = GridDensity::tabulate(0.0, 1.0, 4001, p, q);
  const Spectrum s = spectral_decomposition(quadrature_embedding(fm, g, DensitySide::q).gramian);
  int usable = 0;
  while (usable < 6 && s.eigenvalues(usable) > 1e-6 * s.eigenvalues(0)) ++usable;
  ASSERT_GE(usable, 3);
  const Eigen::VectorXd w = trapezoid_weights(g.grid());
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(usable, usable);
  for (int i = 0; i < g.size(); ++i) {
    const Eigen::VectorXd x = Eigen::VectorXd::Constant(1, g.grid()(i));
    Eigen::VectorXd v(usable);
    for (int j = 0; j < usable; ++j) v(j) = principal_direction(fm, s, j, x)(0);
    gram += w(i) * g.q()(i) * v * v.transpose();
  }
  EXPECT_LE((gram - Eigen::MatrixXd::Identity(usable, usable)).cwiseAbs().maxCoeff(), 1e-4);
}

TEST(PrincipalDirection, DegenerateModeThrows) {
  const FeatureMap fm = make_feature_map(1, 4, 1.0, 2.0, 3);
  const Eigen::MatrixXd D = derivative_gramian(fm, SampleSet(Eigen::MatrixXd::Constant(1, 1, 0.4)));
  const Spectrum s = spectral_decomposition(D);
  EXPECT_NO_THROW(principal_direction(fm, s, 0, vec({0.1})));
  EXPECT_THROW(principal_direction(fm, s, 3, vec({0.1})), DegenerateDirection);
}

TEST(FilteredVelocity, MatchesDirectVelocity) {
  const FeatureMap fm = make_feature_map(2, 32, 1.0, 2.0, 6);
  std::mt19937_64 rng(7);
  const DistributionEmbedding eq = embed(fm, SampleSet(random_normal(rng, 200, 2)));
  Eigen::MatrixXd xp = random_normal(rng, 200, 2);
  xp.col(0).array() += 0.5;
  const Eigen::VectorXd delta = embed(fm, SampleSet(xp)).mu - eq.mu;
  const Spectrum s = spectral_decomposition(eq.gramian);
  EXPECT_EQ(filtered_velocity(fm, s, Eigen::VectorXd::Zero(32), 1e-3, vec({0, 0})), Eigen::VectorXd::Zero(2));
  const WitnessSolution w = solve_witness(eq.gramian, delta, 1e-3);
  for (int t = 0; t < 10; ++t) {
    const Eigen::VectorXd x = random_normal(rng, 2, 1).col(0);
    const Eigen::VectorXd direct = velocity_field(fm, w.coeffs, x);
    const Eigen::VectorXd filtered = filtered_velocity(fm, s, delta, 1e-3, x);
    EXPECT_LE((filtered - direct).norm(), 1e-8 * std::max(direct.norm(), 1e-8));
  }
}

TEST(FilteredVelocity, ModalContributionsRescaleWithLambda) {
  const FeatureMap fm = make_feature_map(1, 8, 1.0, 2.0, 8);
  std::mt19937_64 rng(9);
  const Spectrum s = spectral_decomposition(random_psd(rng, 8, 8));
  const Eigen::VectorXd delta = random_normal(rng, 8, 1).col(0);
  const Eigen::VectorXd x = vec({0.4});
  const double lambda = 0.05;
  const Eigen::MatrixXd a = modal_velocities(fm, s, delta, lambda, x);
  const Eigen::MatrixXd b = modal_velocities(fm, s, delta, 10 * lambda, x);
  for (int j = 0; j < 8; ++j) {
    const double factor = (s.eigenvalues(j) + lambda) / (s.eigenvalues(j) + 10 * lambda);
    EXPECT_NEAR(b(0, j), factor * a(0, j), 1e-12 * std::abs(a(0, j)) + 1e-300);
  }
  EXPECT_NEAR(a.row(0).sum(), filtered_velocity(fm, s, delta, lambda, x)(0), 1e-14);
}
