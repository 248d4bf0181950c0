#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sobolev/feature_map.hpp"

namespace sobolev::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailed = 1,
  kInputError = 2,
  kSingular = 3,
};

// JSON config file layout; every key is optional.
struct RunConfig {
  FeatureMapParams feature_map;
  bool feature_dim_given = false;  // feature_map.d present in the config
  std::vector<double> lambda_grid{1e-3, 1e-2, 1e-1};
  int top_k_directions = 10;
  std::string output_path;
  int grid_resolution = 10001;
  bool allow_zero_lambda = false;
  std::optional<double> tolerance_override;
  std::optional<double> oracle_a;
  std::optional<double> oracle_b;
  int threads = 1;
};

// Throws InvalidParameter / ParseError on malformed or out-of-range content.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

// Entry point of the `sobolev-discrepancy` tool. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sobolev::cli
