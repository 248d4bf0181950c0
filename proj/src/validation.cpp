#include "sobolev/validation.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "json.hpp"
#include "sobolev/discrepancy.hpp"
#include "sobolev/embeddings.hpp"
#include "sobolev/feature_map.hpp"
#include "sobolev/io.hpp"
#include "sobolev/oracle1d.hpp"
#include "sobolev/transport.hpp"

namespace sobolev::validation {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

enum class Pass { at_most, below };

Check make_check(const ValidationConfig& cfg, std::string name, double observed, double tolerance,
                 std::string detail = {}, Pass rule = Pass::at_most) {
  const double tol = cfg.tolerance_override.value_or(tolerance);
  const bool ok = std::isfinite(observed) && (rule == Pass::at_most ? observed <= tol : observed < tol);
  return {std::move(name), ok, observed, tol, std::move(detail)};
}

MatrixXd gaussian_matrix(std::mt19937_64& rng, int rows, int cols, double mean, double sd) {
  std::normal_distribution<double> n(mean, sd);
  MatrixXd out(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out(i, j) = n(rng);
  return out;
}

VectorXd gaussian_vector(std::mt19937_64& rng, int n) { return gaussian_matrix(rng, n, 1, 0.0, 1.0).col(0); }

// Randomized two-sample problem: q ~ N(0, I), p ~ N(shift, s^2 I).
struct Instance {
  int d = 1;
  int m = 8;
  double lambda = 1e-3;
  MatrixXd gramian;
  VectorXd delta;
};

Instance make_instance(std::uint64_t seed, int i) {
  static constexpr std::array<double, 3> lambdas{1e-3, 1e-1, 1.0};
  Instance inst;
  inst.d = 1 + i % 3;
  inst.m = (i / 3) % 2 ? 64 : 8;
  inst.lambda = lambdas[(i / 6) % 3];
  std::mt19937_64 rng(seed * 7919 + static_cast<std::uint64_t>(i));
  const FeatureMap fm = make_feature_map(inst.d, inst.m, 1.0, 3.0, seed * 1000 + static_cast<std::uint64_t>(i));
  std::uniform_real_distribution<double> shift(-0.8, 0.8);
  std::uniform_real_distribution<double> spread(0.7, 1.3);
  MatrixXd q = gaussian_matrix(rng, 200, inst.d, 0.0, 1.0);
  MatrixXd p = gaussian_matrix(rng, 200, inst.d, 0.0, spread(rng));
  for (int a = 0; a < inst.d; ++a) p.col(a).array() += shift(rng);
  const auto eq = embed(fm, SampleSet(std::move(q), "q"));
  const auto ep = embed(fm, SampleSet(std::move(p), "p"));
  inst.gramian = eq.gramian;
  inst.delta = mean_difference(ep.mu, eq.mu);
  return inst;
}

constexpr int kInstances = 50;

MatrixXd psd_sqrt(const MatrixXd& D) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(D);
  const VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().transpose();
}

// 1 + sum_k alpha_k cos(k pi x) on [0, 1]; unit mass, minimum >= 1 - sum |alpha_k|.
std::function<double(double)> cosine_density(std::mt19937_64& rng, double total_amplitude) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::array<double, 3> alpha{u(rng), u(rng), u(rng)};
  double l1 = 0.0;
  for (double a : alpha) l1 += std::abs(a);
  for (double& a : alpha) a *= total_amplitude / l1;
  return [alpha](double x) {
    double v = 1.0;
    for (int k = 0; k < 3; ++k) v += alpha[k] * std::cos((k + 1) * std::numbers::pi * x);
    return v;
  };
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

GridDensity tilted_uniform(double eps, int G) {
  return GridDensity::tabulate(
      0.0, 1.0, G, [eps](double x) { return 1.0 + eps * (2.0 * x - 1.0); }, [](double) { return 1.0; });
}

double tilted_uniform_quantile(double eps, double t) {
  if (t <= 0.0) return 0.0;
  // Root of eps x^2 + (1 - eps) x - t = 0 in the cancellation-free form.
  const double b = 1.0 - eps;
  return 2.0 * t / (b + std::sqrt(b * b + 4.0 * eps * t));
}

std::vector<Check> kinetic_energy_identity(const ValidationConfig& cfg) {
  double worst = 0.0;
  double slowest = 0.0;
  for (int i = 0; i < kInstances; ++i) {
    const auto start = Clock::now();
    const Instance inst = make_instance(cfg.seed, i);
    const WitnessSolution w = solve_witness(inst.gramian, inst.delta, inst.lambda);
    slowest = std::max(slowest, seconds_since(start));
    const double v2 = w.value * w.value;
    worst = std::max(worst, std::abs(v2 - (w.kinetic + w.penalty)) / std::max(1.0, v2));
  }
  return {make_check(cfg, "kinetic_energy_identity", worst, 1e-10,
                     "value^2 = u^T D u + lambda |u|^2 over 50 randomized instances"),
          make_check(cfg, "kinetic_energy_identity_runtime_s", slowest, 1.0, "slowest instance, seconds")};
}

std::vector<Check> optimality_gap_identity(const ValidationConfig& cfg) {
  double worst = 0.0;
  for (int i = 0; i < kInstances; ++i) {
    const Instance inst = make_instance(cfg.seed, i);
    const WitnessSolution w = solve_witness(inst.gramian, inst.delta, inst.lambda);
    const MatrixXd root = psd_sqrt(inst.gramian);
    std::mt19937_64 rng(cfg.seed * 31 + static_cast<std::uint64_t>(i));
    for (int k = 0; k < 20; ++k) {
      VectorXd u = gaussian_vector(rng, inst.m);
      if (k % 2) u += w.coeffs;
      const VectorXd e = u - w.coeffs;
      const double lhs = w.value * w.value - objective(inst.gramian, inst.delta, u, inst.lambda);
      const double rhs = (root * e).squaredNorm() + inst.lambda * e.squaredNorm();
      worst = std::max(worst, std::abs(lhs - rhs) / rhs);
    }
  }
  return {make_check(cfg, "optimality_gap_identity", worst, 1e-8,
                     "value^2 - L(u) = |D^1/2 (u - u*)|^2 + lambda |u - u*|^2, 20 candidates per instance")};
}

std::vector<Check> resolvent_monotonicity(const ValidationConfig& cfg) {
  std::array<double, 12> grid{};
  for (int k = 0; k < 12; ++k) grid[k] = std::pow(10.0, -6.0 + 8.0 * k / 11.0);
  double worst = -1.0;
  for (int i = 0; i < kInstances; ++i) {
    const Instance inst = make_instance(cfg.seed, i);
    double prev = discrepancy_value(inst.gramian, inst.delta, grid[0]);
    for (int k = 1; k < 12; ++k) {
      const double cur = discrepancy_value(inst.gramian, inst.delta, grid[k]);
      worst = std::max(worst, (cur - prev) / std::max(1.0, prev));
      prev = cur;
    }
  }
  return {make_check(cfg, "resolvent_monotonicity", worst, 1e-12,
                     "largest relative increase of the discrepancy along lambda in [1e-6, 1e2]")};
}

std::vector<Check> jacobian_finite_difference(const ValidationConfig& cfg) {
  std::mt19937_64 rng(cfg.seed * 131 + 5);
  std::uniform_int_distribution<int> features(1, 64);
  std::uniform_real_distribution<double> bandwidth(0.5, 2.0);
  std::uniform_real_distribution<double> window(1.0, 5.0);
  constexpr double h = 1e-5;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int d = 1 + i % 3;
    const double s = window(rng);
    const FeatureMap fm = make_feature_map(d, features(rng), bandwidth(rng), s, cfg.seed * 977 + static_cast<std::uint64_t>(i));
    const VectorXd x = gaussian_matrix(rng, d, 1, 0.0, 0.5 * s).col(0);
    const MatrixXd jac = fm.jacobian(x);
    MatrixXd fd(d, fm.dim_feature());
    for (int a = 0; a < d; ++a) {
      VectorXd xp = x, xm = x;
      xp(a) += h;
      xm(a) -= h;
      fd.row(a) = ((fm.evaluate(xp) - fm.evaluate(xm)) / (2.0 * h)).transpose();
    }
    const double scale = jac.cwiseAbs().maxCoeff();
    worst = std::max(worst, (fd - jac).cwiseAbs().maxCoeff() / scale);
  }
  return {make_check(cfg, "jacobian_finite_difference", worst, 1e-5,
                     "analytic Jacobian vs central differences (step 1e-5), error relative to the largest entry")};
}

std::vector<Check> spectral_path_equivalence(const ValidationConfig& cfg) {
  const int d = 2;
  const FeatureMap fm = make_feature_map(d, 32, 1.0, 3.0, cfg.seed + 11);
  std::mt19937_64 rng(cfg.seed * 17 + 3);
  MatrixXd p = gaussian_matrix(rng, 200, d, 0.0, 1.0);
  p.col(0).array() += 0.6;
  const auto eq = embed(fm, SampleSet(gaussian_matrix(rng, 200, d, 0.0, 1.0)));
  const auto ep = embed(fm, SampleSet(std::move(p)));
  const VectorXd delta = mean_difference(ep.mu, eq.mu);
  const double lambda = 1e-3;
  const WitnessSolution w = solve_witness(eq.gramian, delta, lambda);
  const Spectrum s = spectral_decomposition(eq.gramian);

  double err = 0.0;
  double scale = 0.0;
  for (int i = 0; i < 100; ++i) {
    const VectorXd x = gaussian_matrix(rng, d, 1, 0.0, 1.0).col(0);
    const VectorXd direct = velocity_field(fm, w.coeffs, x);
    const VectorXd filtered = filtered_velocity(fm, s, delta, lambda, x);
    err = std::max(err, (filtered - direct).norm());
    scale = std::max(scale, direct.norm());
  }
  const VectorXd rebuilt = reconstruct_coefficients(s, transport_coefficients(s, delta, lambda));
  const double coeff_err = (rebuilt - w.coeffs).norm() / w.coeffs.norm();
  return {make_check(cfg, "spectral_filtering_path_equivalence", err / scale, 1e-8,
                     "filtered vs direct-solve velocity at 100 points, m = 32"),
          make_check(cfg, "spectral_reconstruction", coeff_err, 1e-8,
                     "sum_j c_j psi_j vs (D + lambda I)^-1 delta")};
}

std::vector<Check> sobolev_1d_closed_form(const ValidationConfig& cfg) {
  const double s = sobolev_1d(tilted_uniform(0.5, 10000));
  const double exact = 0.5 / std::sqrt(30.0);
  return {make_check(cfg, "sobolev_1d_closed_form", std::abs(s - exact), 1e-6,
                     "q = 1, p = 1 + 0.5 (2x - 1): S = 0.5 / sqrt(30)")};
}

std::vector<Check> wasserstein_sandwich(const ValidationConfig& cfg) {
  const auto start = Clock::now();
  std::vector<GridDensity> cases{tilted_uniform(0.5, cfg.grid_resolution), tilted_uniform(0.9, cfg.grid_resolution)};
  std::mt19937_64 rng(cfg.seed * 53 + 1);
  std::uniform_real_distribution<double> amp(0.2, 0.9);
  for (int i = 0; i < 10; ++i) {
    const auto p = cosine_density(rng, amp(rng));
    const auto q = cosine_density(rng, amp(rng));
    cases.push_back(GridDensity::tabulate(0.0, 1.0, cfg.grid_resolution, p, q));
  }
  double worst = -1.0;
  double min_ratio = 1.0;
  for (const auto& g : cases) {
    const BoundsCheck b = check_bounds(g);
    const double ratio = std::sqrt(g.lower_bound() / g.upper_bound());
    worst = std::max({worst, ratio * b.s - b.w2, b.w2 - 2.0 * b.s});
    min_ratio = std::min(min_ratio, g.lower_bound());
  }
  const double elapsed = seconds_since(start);
  return {make_check(cfg, "w2_sobolev_sandwich", worst, 1e-4,
                     "max violation of sqrt(a/b) S <= W2 <= 2 S over 12 densities, min a = " +
                         io::format_double(min_ratio)),
          make_check(cfg, "w2_sobolev_sandwich_runtime_s", elapsed, 5.0, "total seconds")};
}

std::vector<Check> kernel_upper_bound(const ValidationConfig& cfg) {
  const GridDensity g = tilted_uniform(0.5, cfg.grid_resolution);
  const FeatureMap fm = make_feature_map(1, 256, 0.1, 1.0, cfg.seed + 101);
  const auto ep = quadrature_embedding(fm, g, DensitySide::p);
  const auto eq = quadrature_embedding(fm, g, DensitySide::q);
  const double kernel = discrepancy_value(eq.gramian, mean_difference(ep.mu, eq.mu), 1e-6);
  const double exact = sobolev_1d(g);
  return {make_check(cfg, "kernel_discrepancy_upper_bound", kernel - exact, 1e-3,
                     "S_H,lambda - S with quadrature embeddings, m = 256, lambda = 1e-6; S_H = " +
                         io::format_double(kernel) + ", S = " + io::format_double(exact))};
}

std::vector<Check> statistical_convergence(const ValidationConfig& cfg) {
  const auto start = Clock::now();
  const double eps = 0.5;
  const double lambda = 1e-2;
  const FeatureMap fm = make_feature_map(1, 64, 0.25, 2.0, cfg.seed + 7);
  const GridDensity g = tilted_uniform(eps, cfg.grid_resolution);
  const auto pop_p = quadrature_embedding(fm, g, DensitySide::p);
  const auto pop_q = quadrature_embedding(fm, g, DensitySide::q);
  const WitnessSolution pop = solve_witness(pop_q.gramian, mean_difference(pop_p.mu, pop_q.mu), lambda);
  const double target = pop.value * pop.value;

  constexpr std::array<int, 3> sizes{100, 400, 1600};
  std::array<double, 3> medians{};
  for (int k = 0; k < 3; ++k) {
    const int n = sizes[k];
    std::vector<double> errors;
    for (std::uint64_t s = 0; s < 20; ++s) {
      std::mt19937_64 rng(cfg.seed * 100003 + s * 7 + static_cast<std::uint64_t>(k));
      std::uniform_real_distribution<double> u(0.0, 1.0);
      MatrixXd xp(n, 1), xq(n, 1);
      for (int i = 0; i < n; ++i) {
        xp(i, 0) = tilted_uniform_quantile(eps, u(rng));
        xq(i, 0) = u(rng);
      }
      const auto ep = embed(fm, SampleSet(std::move(xp)));
      const auto eq = embed(fm, SampleSet(std::move(xq)));
      const double v = discrepancy_value(eq.gramian, mean_difference(ep.mu, eq.mu), lambda);
      errors.push_back(std::abs(v * v - target));
    }
    medians[k] = median(std::move(errors));
  }
  const double worst_step = std::max(medians[1] - medians[0], medians[2] - medians[1]);
  const double elapsed = seconds_since(start);
  return {make_check(cfg, "statistical_convergence_trend", worst_step, 0.0,
                     "median |S^2(N) - S^2_pop| for N = 100, 400, 1600: " + io::format_double(medians[0]) + ", " +
                         io::format_double(medians[1]) + ", " + io::format_double(medians[2]),
                     Pass::below),
          make_check(cfg, "statistical_convergence_runtime_s", elapsed, 30.0, "total seconds")};
}

std::vector<Check> zero_and_scale_laws(const ValidationConfig& cfg) {
  const int d = 2;
  const FeatureMap fm = make_feature_map(d, 16, 1.0, 3.0, cfg.seed + 23);
  std::mt19937_64 rng(cfg.seed * 29 + 9);
  const SampleSet same(gaussian_matrix(rng, 150, d, 0.0, 1.0));
  const double lambda = 0.1;
  const auto e1 = embed(fm, same);
  const auto e2 = embed(fm, same);
  const double zero = solve_witness(e2.gramian, mean_difference(e1.mu, e2.mu), lambda).value;

  MatrixXd p = gaussian_matrix(rng, 150, d, 0.0, 1.0);
  p.col(1).array() -= 0.4;
  const auto ep = embed(fm, SampleSet(std::move(p)));
  const VectorXd delta = mean_difference(ep.mu, e2.mu);
  const WitnessSolution w1 = solve_witness(e2.gramian, delta, lambda);
  const WitnessSolution w3 = solve_witness(e2.gramian, 3.0 * delta, lambda);
  const double value_err = std::abs(w3.value - 3.0 * w1.value) / (3.0 * w1.value);
  const VectorXd f1 = witness_function(w1);
  const VectorXd f3 = witness_function(w3);
  const double witness_err = (f3 - f1).cwiseAbs().maxCoeff() / f1.cwiseAbs().maxCoeff();
  return {make_check(cfg, "zero_law", zero, 0.0, "identical samples give a zero discrepancy"),
          make_check(cfg, "scale_law", std::max(value_err, witness_err), 1e-12,
                     "delta -> 3 delta: value scales by 3, witness unchanged")};
}

std::vector<Check> pde_residual_convergence(const ValidationConfig& cfg) {
  // Non-polynomial pair: the reconstructed potential carries a genuine
  // discretization error, unlike the tilted-uniform case where it is exact.
  const auto p = [](double x) { return 1.0 + 0.4 * std::cos(std::numbers::pi * x); };
  const auto q = [](double x) { return 1.0 + 0.3 * std::cos(2.0 * std::numbers::pi * x); };
  constexpr std::array<int, 3> sizes{1000, 2000, 4000};
  std::array<double, 3> residual{};
  for (int k = 0; k < 3; ++k) {
    const GridDensity g = GridDensity::tabulate(0.0, 1.0, sizes[k], p, q);
    residual[k] = pde_residual(g, advection_potential_1d(g));
  }
  const double worst_ratio = std::max(residual[1] / residual[0], residual[2] / residual[1]);

  const GridDensity tilted = tilted_uniform(0.5, cfg.grid_resolution);
  const double tilted_scaled = pde_residual(tilted, advection_potential_1d(tilted)) * tilted.size();
  return {make_check(cfg, "pde_residual_convergence", worst_ratio, 0.5,
                     "residual ratio under grid doubling, G = 1000, 2000, 4000: " + io::format_double(residual[0]) +
                         ", " + io::format_double(residual[1]) + ", " + io::format_double(residual[2])),
          make_check(cfg, "pde_residual_tilted_bound", tilted_scaled, 10.0,
                     "G * residual of the reconstructed potential, tilted uniform")};
}

ValidationReport run_validation(const ValidationConfig& cfg) {
  ValidationReport report;
  report.seed = cfg.seed;
  using Suite = std::vector<Check> (*)(const ValidationConfig&);
  constexpr std::array<Suite, 11> suites{kinetic_energy_identity,  optimality_gap_identity, resolvent_monotonicity,
                                         jacobian_finite_difference, spectral_path_equivalence,
                                         sobolev_1d_closed_form,   wasserstein_sandwich,    kernel_upper_bound,
                                         statistical_convergence,  zero_and_scale_laws,     pde_residual_convergence};
  for (Suite suite : suites) {
    auto checks = suite(cfg);
    report.checks.insert(report.checks.end(), checks.begin(), checks.end());
  }
  return report;
}

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string ValidationReport::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["all_passed"] = all_passed();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json row;
    row["name"] = c.name;
    row["passed"] = c.passed;
    row["observed"] = std::isfinite(c.observed) ? nlohmann::ordered_json(c.observed) : nlohmann::ordered_json();
    row["tolerance"] = c.tolerance;
    row["detail"] = c.detail;
    j["checks"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

}  // namespace sobolev::validation
