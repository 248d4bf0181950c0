#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

namespace sobolev {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using ConstVectorRef = Eigen::Ref<const VectorXd>;

// Generator arguments of a random feature map. Enough to rebuild it exactly.
struct FeatureMapParams {
  int d = 1;
  int m = 64;
  double bandwidth = 1.0;
  double window_scale = 5.0;
  std::uint64_t seed = 0;
  std::optional<double> amplitude;  // defaults to sqrt(2/m)

  bool operator==(const FeatureMapParams&) const = default;
};

/// Gaussian-windowed random Fourier features
///
///   phi_j(x) = c * exp(-|x|^2 / (2 s^2)) * cos(w_j . x + b_j),   j = 1..m,
///
/// with one frequency row w_j per feature, phase b_j in [0, 2 pi), window
/// width s and amplitude c. The window makes every feature vanish at
/// infinity while the Jacobian stays closed form. |phi(x)| <= c sqrt(m).
///
/// Immutable once built; evaluate() and jacobian() are safe to call
/// concurrently.
class FeatureMap {
 public:
  FeatureMap(MatrixXd frequencies, VectorXd phases, double window_scale, double amplitude);

  int dim_input() const { return static_cast<int>(frequencies_.cols()); }
  int dim_feature() const { return static_cast<int>(frequencies_.rows()); }
  const MatrixXd& frequencies() const { return frequencies_; }
  const VectorXd& phases() const { return phases_; }
  double window_scale() const { return window_scale_; }
  double amplitude() const { return amplitude_; }

  // Present only for maps built by make_feature_map.
  const std::optional<FeatureMapParams>& params() const { return params_; }

  VectorXd evaluate(const ConstVectorRef& x) const;

  // d x m, entry (a, j) = d phi_j / d x_a. The gradient of f(x) = <f, phi(x)>
  // is jacobian(x) * f.
  MatrixXd jacobian(const ConstVectorRef& x) const;

  // Both at once; shares the window and trig evaluations.
  void evaluate_with_jacobian(const ConstVectorRef& x, VectorXd& phi, MatrixXd& jac) const;

  bool operator==(const FeatureMap& other) const;

 private:
  friend FeatureMap make_feature_map(const FeatureMapParams&);
  void check_point(const ConstVectorRef& x) const;

  MatrixXd frequencies_;  // m x d
  VectorXd phases_;       // m
  double window_scale_;
  double amplitude_;
  std::optional<FeatureMapParams> params_;
};

// Frequencies ~ N(0, 1/bandwidth^2) i.i.d., phases ~ U[0, 2 pi), drawn from a
// 64-bit Mersenne twister seeded with `seed`.
FeatureMap make_feature_map(const FeatureMapParams& params);
FeatureMap make_feature_map(int d, int m, double bandwidth, double window_scale,
                            std::uint64_t seed);

struct Box {
  VectorXd lower;
  VectorXd upper;
};

struct AssumptionReport {
  double kappa1_estimate = 0.0;  // max |phi(x)|
  double kappa2_estimate = 0.0;  // max over x, a of sum_j (d phi_j / d x_a)^2
  double boundary_decay = 0.0;   // max |phi(x)| over grid points on the box faces
  long long probe_count = 0;
};

// Probes a uniform tensor grid with grid_points_per_axis nodes per axis.
AssumptionReport verify_assumptions(const FeatureMap& fm, const Box& box, int grid_points_per_axis);

}  // namespace sobolev
