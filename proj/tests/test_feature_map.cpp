#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sobolev/errors.hpp"
#include "sobolev/feature_map.hpp"
#include "sobolev/io.hpp"

using namespace sobolev;
using sobolev::testing::central_difference_jacobian;
using sobolev::testing::random_normal;
using sobolev::testing::scalar_dphi;
using sobolev::testing::scalar_phi;

TEST(FeatureMap, DeterministicGivenSeed) {
  const FeatureMap a = make_feature_map(1, 4, 1.0, 10.0, 7);
  const FeatureMap b = make_feature_map(1, 4, 1.0, 10.0, 7);
  EXPECT_TRUE(a == b);
  EXPECT_FALSE(a == make_feature_map(1, 4, 1.0, 10.0, 8));
}

TEST(FeatureMap, ShapeContract) {
  const FeatureMap fm = make_feature_map(2, 64, 0.5, 5.0, 1);
  EXPECT_EQ(fm.frequencies().rows(), 64);
  EXPECT_EQ(fm.frequencies().cols(), 2);
  EXPECT_EQ(fm.phases().size(), 64);
  EXPECT_DOUBLE_EQ(fm.amplitude(), std::sqrt(2.0 / 64));
  for (int j = 0; j < 64; ++j) {
    EXPECT_GE(fm.phases()(j), 0.0);
    EXPECT_LT(fm.phases()(j), 2.0 * std::numbers::pi);
  }
}

TEST(FeatureMap, FrequencySpreadFollowsBandwidth) {
  const FeatureMap fm = make_feature_map(1, 4000, 0.5, 5.0, 3);
  const Eigen::VectorXd w = fm.frequencies().col(0);
  const double mean = w.mean();
  const double sd = std::sqrt((w.array() - mean).square().sum() / (w.size() - 1));
  EXPECT_NEAR(mean, 0.0, 0.15);
  EXPECT_NEAR(sd, 2.0, 0.1);
}

TEST(FeatureMap, RejectsInvalidParameters) {
  EXPECT_THROW(make_feature_map(1, 0, 1.0, 1.0, 0), InvalidParameter);
  EXPECT_THROW(make_feature_map(0, 4, 1.0, 1.0, 0), InvalidParameter);
  EXPECT_THROW(make_feature_map(1, 4, 0.0, 1.0, 0), InvalidParameter);
  EXPECT_THROW(make_feature_map(1, 4, 1.0, -1.0, 0), InvalidParameter);
  EXPECT_THROW(make_feature_map(1, 4, NAN, 1.0, 0), InvalidParameter);
}

TEST(FeatureMap, EvaluateAtOriginIsAmplitudeTimesCosPhase) {
  const FeatureMap fm = make_feature_map(3, 16, 1.0, 2.0, 5);
  const Eigen::VectorXd phi = fm.evaluate(Eigen::VectorXd::Zero(3));
  for (int j = 0; j < 16; ++j) EXPECT_DOUBLE_EQ(phi(j), fm.amplitude() * std::cos(fm.phases()(j)));
}

TEST(FeatureMap, EnvelopeDecayFarFromOrigin) {
  const FeatureMap fm = make_feature_map(2, 32, 1.0, 1.5, 2);
  Eigen::VectorXd x(2);
  x << 6.0, 8.0;  // |x| = 10
  x *= 1.5;
  EXPECT_LE(fm.evaluate(x).norm(), 1e-20 * fm.amplitude() * std::sqrt(32.0));
}

TEST(FeatureMap, MatchesScalarFormula) {
  const FeatureMap fm = make_feature_map(2, 8, 1.0, 2.0, 3);
  std::mt19937_64 rng(42);
  for (int t = 0; t < 10; ++t) {
    const Eigen::VectorXd x = random_normal(rng, 2, 1).col(0);
    const Eigen::VectorXd phi = fm.evaluate(x);
    for (int j = 0; j < 8; ++j) {
      const double ref = scalar_phi(fm, j, x);
      EXPECT_NEAR(phi(j), ref, 1e-12 * std::max(std::abs(ref), 1e-300));
    }
  }
}

TEST(FeatureMap, ShapeAndDomainErrors) {
  const FeatureMap fm = make_feature_map(2, 8, 1.0, 2.0, 3);
  EXPECT_THROW(fm.evaluate(Eigen::VectorXd::Zero(3)), ShapeError);
  EXPECT_THROW(fm.jacobian(Eigen::VectorXd::Zero(1)), ShapeError);
  Eigen::VectorXd bad(2);
  bad << 0.0, INFINITY;
  EXPECT_THROW(fm.evaluate(bad), DomainError);
  EXPECT_THROW(FeatureMap(Eigen::MatrixXd::Ones(3, 1), Eigen::VectorXd::Zero(2), 1.0, 1.0), ShapeError);
}

TEST(FeatureMap, JacobianVanishesAtOriginForZeroFrequency) {
  Eigen::MatrixXd omega(3, 2);
  omega << 0.0, 0.0, 1.0, -2.0, 0.0, 0.0;
  Eigen::VectorXd b(3);
  b << 0.3, 1.1, 2.5;
  const FeatureMap fm(omega, b, 2.0, 0.7);
  const Eigen::MatrixXd jac = fm.jacobian(Eigen::VectorXd::Zero(2));
  EXPECT_EQ(jac.col(0).norm(), 0.0);
  EXPECT_EQ(jac.col(2).norm(), 0.0);
  EXPECT_GT(jac.col(1).norm(), 0.0);
}

TEST(FeatureMap, JacobianAtOriginClosedForm) {
  const FeatureMap fm = make_feature_map(3, 10, 0.7, 2.0, 9);
  const Eigen::MatrixXd jac = fm.jacobian(Eigen::VectorXd::Zero(3));
  for (int j = 0; j < 10; ++j) {
    const Eigen::VectorXd expected = -fm.amplitude() * std::sin(fm.phases()(j)) * fm.frequencies().row(j).transpose();
    EXPECT_LE((jac.col(j) - expected).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(FeatureMap, JacobianMatchesScalarProductRule) {
  const FeatureMap fm = make_feature_map(3, 12, 0.8, 2.5, 4);
  std::mt19937_64 rng(8);
  const Eigen::VectorXd x = random_normal(rng, 3, 1).col(0);
  const Eigen::MatrixXd jac = fm.jacobian(x);
  for (int a = 0; a < 3; ++a)
    for (int j = 0; j < 12; ++j) EXPECT_NEAR(jac(a, j), scalar_dphi(fm, j, a, x), 1e-14);
}

// Property: analytic Jacobian vs central differences over random maps and points.
TEST(FeatureMapProperty, JacobianConsistentWithFiniteDifferences) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(1, 3), feat(1, 64);
  std::uniform_real_distribution<double> bw(0.5, 2.0), win(1.0, 5.0);
  for (int t = 0; t < 50; ++t) {
    const double s = win(rng);
    const FeatureMap fm = make_feature_map(dim(rng), feat(rng), bw(rng), s, 100 + t);
    const Eigen::VectorXd x = random_normal(rng, fm.dim_input(), 1, 0.5 * s).col(0);
    const Eigen::MatrixXd jac = fm.jacobian(x);
    const Eigen::MatrixXd fd = central_difference_jacobian(fm, x, 1e-5);
    EXPECT_LE((fd - jac).cwiseAbs().maxCoeff() / jac.cwiseAbs().maxCoeff(), 1e-5) << "trial " << t;
  }
}

TEST(FeatureMapProperty, DecayBound) {
  std::mt19937_64 rng(77);
  const FeatureMap fm = make_feature_map(2, 40, 0.6, 1.3, 12);
  const double cap = fm.amplitude() * std::sqrt(40.0);
  for (int t = 0; t < 200; ++t) {
    Eigen::VectorXd x = random_normal(rng, 2, 1).col(0);
    const double k = 0.5 + 0.05 * t;
    x *= (k * fm.window_scale()) / x.norm();
    EXPECT_LE(fm.evaluate(x).norm(), cap * std::exp(-k * k / 2) * (1 + 1e-12));
  }
}

TEST(AssumptionReport, GlobalBoundOnWideBox) {
  const FeatureMap fm = make_feature_map(2, 16, 1.0, 1.0, 6);
  const Box box{Eigen::VectorXd::Constant(2, -5.0), Eigen::VectorXd::Constant(2, 5.0)};
  const AssumptionReport r = verify_assumptions(fm, box, 41);
  EXPECT_EQ(r.probe_count, 41 * 41);
  EXPECT_LE(r.kappa1_estimate, fm.amplitude() * 4.0);
  EXPECT_GT(r.kappa1_estimate, 0.0);
  EXPECT_TRUE(std::isfinite(r.kappa2_estimate));
}

TEST(AssumptionReport, BoundaryDecayAtEightWindows) {
  const FeatureMap fm = make_feature_map(2, 16, 1.0, 0.5, 6);
  const Box box{Eigen::VectorXd::Constant(2, -4.0), Eigen::VectorXd::Constant(2, 4.0)};
  const AssumptionReport r = verify_assumptions(fm, box, 21);
  EXPECT_LE(r.boundary_decay, 1e-10 * fm.amplitude() * 4.0);
}

TEST(AssumptionReport, Kappa2MatchesBruteForceGrid) {
  const FeatureMap fm = make_feature_map(1, 8, 0.7, 2.0, 13);
  const AssumptionReport r =
      verify_assumptions(fm, Box{Eigen::VectorXd::Constant(1, -3.0), Eigen::VectorXd::Constant(1, 3.0)}, 1001);
  double via_jacobian = 0.0, via_scalar = 0.0;
  Eigen::VectorXd x(1);
  for (int i = 0; i < 1001; ++i) {
    x(0) = -3.0 + 6.0 * (i / 1000.0);
    via_jacobian = std::max(via_jacobian, fm.jacobian(x).row(0).squaredNorm());
    double s = 0.0;
    for (int j = 0; j < 8; ++j) s += std::pow(scalar_dphi(fm, j, 0, x), 2);
    via_scalar = std::max(via_scalar, s);
  }
  EXPECT_EQ(r.kappa2_estimate, via_jacobian);
  EXPECT_NEAR(r.kappa2_estimate, via_scalar, 1e-13 * via_scalar);
}

TEST(AssumptionReport, RejectsDegenerateInputs) {
  const FeatureMap fm = make_feature_map(2, 4, 1.0, 1.0, 0);
  const Box flat{Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(2)};
  EXPECT_THROW(verify_assumptions(fm, flat, 5), InvalidParameter);
  const Box ok{Eigen::VectorXd::Zero(2), Eigen::VectorXd::Ones(2)};
  EXPECT_THROW(verify_assumptions(fm, ok, 1), InvalidParameter);
  EXPECT_THROW(verify_assumptions(fm, Box{Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1)}, 5), ShapeError);
}

TEST(FeatureMapProperty, JsonRebuildIsBitwiseIdentical) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> dim(1, 4), feat(1, 200);
  for (int t = 0; t < 20; ++t) {
    const FeatureMap fm = make_feature_map(dim(rng), feat(rng), 0.1 + 0.2 * t, 0.5 + t, rng());
    const FeatureMap back = io::feature_map_from_json(io::feature_map_to_json(fm));
    EXPECT_TRUE(back == fm);
  }
}
