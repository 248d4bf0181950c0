#include "sobolev/feature_map.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "sobolev/errors.hpp"

namespace sobolev {

namespace {

constexpr long long kMaxProbePoints = 20'000'000;

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

FeatureMap::FeatureMap(MatrixXd frequencies, VectorXd phases, double window_scale, double amplitude)
    : frequencies_(std::move(frequencies)),
      phases_(std::move(phases)),
      window_scale_(window_scale),
      amplitude_(amplitude) {
  if (frequencies_.rows() < 1 || frequencies_.cols() < 1)
    throw InvalidParameter("feature map needs m >= 1 features and d >= 1 inputs");
  if (phases_.size() != frequencies_.rows())
    throw ShapeError("phases has length " + std::to_string(phases_.size()) + ", expected m = " +
                     std::to_string(frequencies_.rows()));
  if (!positive_finite(window_scale_)) throw InvalidParameter("window_scale must be positive");
  if (!positive_finite(amplitude_)) throw InvalidParameter("amplitude must be positive");
  if (!frequencies_.allFinite() || !phases_.allFinite())
    throw DomainError("frequencies and phases must be finite");
}

void FeatureMap::check_point(const ConstVectorRef& x) const {
  if (x.size() != dim_input())
    throw ShapeError("point has dimension " + std::to_string(x.size()) + ", feature map expects " +
                     std::to_string(dim_input()));
  if (!x.allFinite()) throw DomainError("point has non-finite coordinates");
}

VectorXd FeatureMap::evaluate(const ConstVectorRef& x) const {
  check_point(x);
  const double window = amplitude_ * std::exp(-0.5 * x.squaredNorm() / (window_scale_ * window_scale_));
  VectorXd theta = frequencies_ * x + phases_;
  return window * theta.array().cos().matrix();
}

MatrixXd FeatureMap::jacobian(const ConstVectorRef& x) const {
  VectorXd phi;
  MatrixXd jac;
  evaluate_with_jacobian(x, phi, jac);
  return jac;
}

void FeatureMap::evaluate_with_jacobian(const ConstVectorRef& x, VectorXd& phi, MatrixXd& jac) const {
  check_point(x);
  const double inv_s2 = 1.0 / (window_scale_ * window_scale_);
  const double window = amplitude_ * std::exp(-0.5 * x.squaredNorm() * inv_s2);
  const VectorXd theta = frequencies_ * x + phases_;
  const VectorXd cos_t = theta.array().cos();
  const VectorXd sin_t = theta.array().sin();
  phi = window * cos_t;
  // d/dx_a [e(x) cos(t_j)] = e(x) * (-x_a / s^2 * cos(t_j) - w_ja * sin(t_j))
  jac = -(x * inv_s2) * phi.transpose();
  jac.noalias() -= window * frequencies_.transpose() * sin_t.asDiagonal();
}

bool FeatureMap::operator==(const FeatureMap& other) const {
  return frequencies_.rows() == other.frequencies_.rows() &&
         frequencies_.cols() == other.frequencies_.cols() && frequencies_ == other.frequencies_ &&
         phases_ == other.phases_ && window_scale_ == other.window_scale_ &&
         amplitude_ == other.amplitude_ && params_ == other.params_;
}

FeatureMap make_feature_map(const FeatureMapParams& params) {
  if (params.d < 1) throw InvalidParameter("d must be >= 1, got " + std::to_string(params.d));
  if (params.m < 1) throw InvalidParameter("m must be >= 1, got " + std::to_string(params.m));
  if (!positive_finite(params.bandwidth)) throw InvalidParameter("bandwidth must be positive and finite");
  if (!positive_finite(params.window_scale))
    throw InvalidParameter("window_scale must be positive and finite");
  const double amplitude = params.amplitude.value_or(std::sqrt(2.0 / params.m));
  if (!positive_finite(amplitude)) throw InvalidParameter("amplitude must be positive and finite");

  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::mt19937_64 rng(params.seed);
  std::normal_distribution<double> freq(0.0, 1.0 / params.bandwidth);
  std::uniform_real_distribution<double> phase(0.0, two_pi);

  MatrixXd omega(params.m, params.d);
  VectorXd b(params.m);
  for (int j = 0; j < params.m; ++j) {
    for (int a = 0; a < params.d; ++a) omega(j, a) = freq(rng);
    double bj = phase(rng);
    b(j) = bj >= two_pi ? 0.0 : bj;
  }
  FeatureMap fm(std::move(omega), std::move(b), params.window_scale, amplitude);
  fm.params_ = params;
  fm.params_->amplitude = amplitude;
  return fm;
}

FeatureMap make_feature_map(int d, int m, double bandwidth, double window_scale, std::uint64_t seed) {
  return make_feature_map(FeatureMapParams{d, m, bandwidth, window_scale, seed, std::nullopt});
}

AssumptionReport verify_assumptions(const FeatureMap& fm, const Box& box, int grid_points_per_axis) {
  const int d = fm.dim_input();
  if (box.lower.size() != d || box.upper.size() != d)
    throw ShapeError("box dimension does not match feature map input dimension");
  if (grid_points_per_axis < 2) throw InvalidParameter("grid_points_per_axis must be >= 2");
  for (int a = 0; a < d; ++a) {
    if (!std::isfinite(box.lower(a)) || !std::isfinite(box.upper(a)) || !(box.upper(a) > box.lower(a)))
      throw InvalidParameter("degenerate box along axis " + std::to_string(a));
  }
  long long total = 1;
  for (int a = 0; a < d; ++a) {
    total *= grid_points_per_axis;
    if (total > kMaxProbePoints) throw InvalidParameter("probe grid too large");
  }

  AssumptionReport report;
  report.probe_count = total;
  std::vector<int> index(d, 0);
  VectorXd x(d);
  VectorXd phi;
  MatrixXd jac;
  const double n1 = grid_points_per_axis - 1;
  for (long long k = 0; k < total; ++k) {
    bool on_boundary = false;
    for (int a = 0; a < d; ++a) {
      x(a) = box.lower(a) + (box.upper(a) - box.lower(a)) * (index[a] / n1);
      on_boundary = on_boundary || index[a] == 0 || index[a] == grid_points_per_axis - 1;
    }
    fm.evaluate_with_jacobian(x, phi, jac);
    const double norm = phi.norm();
    report.kappa1_estimate = std::max(report.kappa1_estimate, norm);
    report.kappa2_estimate = std::max(report.kappa2_estimate, jac.rowwise().squaredNorm().maxCoeff());
    if (on_boundary) report.boundary_decay = std::max(report.boundary_decay, norm);

    for (int a = 0; a < d; ++a) {
      if (++index[a] < grid_points_per_axis) break;
      index[a] = 0;
    }
  }
  return report;
}

}  // namespace sobolev
