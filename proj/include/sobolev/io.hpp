#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "sobolev/discrepancy.hpp"
#include "sobolev/embeddings.hpp"
#include "sobolev/feature_map.hpp"
#include "sobolev/grid_density.hpp"

namespace sobolev::io {

// One point per row, comma separated, optional single header row. Rows of
// the wrong arity or with unparsable fields raise ParseError with the line.
SampleSet read_samples_csv(std::istream& in, const std::string& label = {});
SampleSet read_samples_csv_file(const std::string& path, const std::string& label = {});

// Columns x, p, q. Bounds default to the tabulated extremes.
GridDensity read_grid_density_csv(std::istream& in, std::optional<double> a = std::nullopt,
                                  std::optional<double> b = std::nullopt);
GridDensity read_grid_density_csv_file(const std::string& path, std::optional<double> a = std::nullopt,
                                       std::optional<double> b = std::nullopt);

// {d, m, bandwidth, window_scale, seed, amplitude}. Frequencies and phases are
// regenerated from the seed on load.
std::string feature_map_to_json(const FeatureMap& fm);
FeatureMap feature_map_from_json(const std::string& text);

// %.17g; non-finite values become null.
std::string format_double(double v);

// {"lambda", "value", "kinetic", "penalty", "m", "coeffs": [...]}
std::string witness_solution_to_json(const WitnessSolution& w, int indent = 0);

}  // namespace sobolev::io
