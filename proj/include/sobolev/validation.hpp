#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sobolev/grid_density.hpp"

namespace sobolev::validation {

struct Check {
  std::string name;
  bool passed = false;
  double observed = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::uint64_t seed = 0;
  std::vector<Check> checks;

  bool all_passed() const;
  std::string to_json() const;
};

struct ValidationConfig {
  std::uint64_t seed = 0;
  int grid_resolution = 10001;
  // Replaces every check's tolerance when set.
  std::optional<double> tolerance_override;
};

// Each suite returns one or more named checks. Suites generate their own
// synthetic data from cfg.seed.
std::vector<Check> kinetic_energy_identity(const ValidationConfig& cfg);
std::vector<Check> optimality_gap_identity(const ValidationConfig& cfg);
std::vector<Check> resolvent_monotonicity(const ValidationConfig& cfg);
std::vector<Check> jacobian_finite_difference(const ValidationConfig& cfg);
std::vector<Check> spectral_path_equivalence(const ValidationConfig& cfg);
std::vector<Check> sobolev_1d_closed_form(const ValidationConfig& cfg);
std::vector<Check> wasserstein_sandwich(const ValidationConfig& cfg);
std::vector<Check> kernel_upper_bound(const ValidationConfig& cfg);
std::vector<Check> statistical_convergence(const ValidationConfig& cfg);
std::vector<Check> zero_and_scale_laws(const ValidationConfig& cfg);
std::vector<Check> pde_residual_convergence(const ValidationConfig& cfg);

ValidationReport run_validation(const ValidationConfig& cfg);

// Synthetic 1-D instances on [0, 1].

// q = 1, p = 1 + eps (2x - 1).
GridDensity tilted_uniform(double eps, int G);

// Inverse CDF of the tilted density p above, for t in [0, 1].
double tilted_uniform_quantile(double eps, double t);

}  // namespace sobolev::validation
