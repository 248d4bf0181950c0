#include "sobolev/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "sobolev/errors.hpp"

namespace sobolev::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_number(const std::string& field, double& out) {
  const std::string f = trim(field);
  if (f.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtod(f.c_str(), &end);
  return end == f.c_str() + f.size() && errno != ERANGE && std::isfinite(out);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

// Numeric rows of a CSV with an optional header. Blank lines are skipped.
std::vector<std::vector<double>> read_table(std::istream& in, std::size_t expected_cols) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t cols = expected_cols;
  bool seen_first = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    std::vector<double> row(fields.size());
    bool numeric = true;
    for (std::size_t k = 0; k < fields.size() && numeric; ++k) numeric = parse_number(fields[k], row[k]);
    if (!seen_first) {
      seen_first = true;
      if (cols == 0) cols = fields.size();
      if (!numeric) {
        if (fields.size() != cols)
          throw ParseError("header has " + std::to_string(fields.size()) + " columns, expected " +
                               std::to_string(cols),
                           line_no);
        continue;
      }
    }
    if (fields.size() != cols)
      throw ParseError("row has " + std::to_string(fields.size()) + " fields, expected " + std::to_string(cols),
                       line_no);
    if (!numeric) throw ParseError("row contains a non-numeric or non-finite field", line_no);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no data rows", 0);
  return rows;
}

std::ifstream open_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path, 0);
  return f;
}

}  // namespace

SampleSet read_samples_csv(std::istream& in, const std::string& label) {
  const auto rows = read_table(in, 0);
  MatrixXd pts(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t k = 0; k < rows[i].size(); ++k) pts(i, k) = rows[i][k];
  return SampleSet(std::move(pts), label);
}

SampleSet read_samples_csv_file(const std::string& path, const std::string& label) {
  auto f = open_file(path);
  return read_samples_csv(f, label);
}

GridDensity read_grid_density_csv(std::istream& in, std::optional<double> a, std::optional<double> b) {
  const auto rows = read_table(in, 3);
  const auto n = static_cast<Eigen::Index>(rows.size());
  VectorXd x(n), p(n), q(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x(i) = rows[i][0];
    p(i) = rows[i][1];
    q(i) = rows[i][2];
  }
  return GridDensity::make(std::move(x), std::move(p), std::move(q), a, b);
}

GridDensity read_grid_density_csv_file(const std::string& path, std::optional<double> a, std::optional<double> b) {
  auto f = open_file(path);
  return read_grid_density_csv(f, a, b);
}

std::string feature_map_to_json(const FeatureMap& fm) {
  if (!fm.params()) throw InvalidParameter("only seeded feature maps can be persisted");
  const auto& p = *fm.params();
  std::string out = "{\"d\": " + std::to_string(p.d) + ", \"m\": " + std::to_string(p.m) +
                    ", \"bandwidth\": " + format_double(p.bandwidth) +
                    ", \"window_scale\": " + format_double(p.window_scale) + ", \"seed\": " + std::to_string(p.seed) +
                    ", \"amplitude\": " + format_double(fm.amplitude()) + "}";
  return out;
}

FeatureMap feature_map_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    FeatureMapParams p;
    p.d = j.at("d").get<int>();
    p.m = j.at("m").get<int>();
    p.bandwidth = j.at("bandwidth").get<double>();
    p.window_scale = j.at("window_scale").get<double>();
    p.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("amplitude") && !j["amplitude"].is_null()) p.amplitude = j["amplitude"].get<double>();
    return make_feature_map(p);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("feature map JSON: ") + e.what(), 0);
  }
}

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string witness_solution_to_json(const WitnessSolution& w, int indent) {
  const std::string pad(indent, ' ');
  std::string out = pad + "{\"lambda\": " + format_double(w.lambda) + ", \"value\": " + format_double(w.value) +
                    ", \"kinetic\": " + format_double(w.kinetic) + ", \"penalty\": " + format_double(w.penalty) +
                    ", \"m\": " + std::to_string(w.coeffs.size()) + ", \"coeffs\": [";
  for (Eigen::Index j = 0; j < w.coeffs.size(); ++j) {
    if (j) out += ", ";
    out += format_double(w.coeffs(j));
  }
  out += "]}";
  return out;
}

}  // namespace sobolev::io
