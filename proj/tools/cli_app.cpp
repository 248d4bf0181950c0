#include "cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sobolev/discrepancy.hpp"
#include "sobolev/embeddings.hpp"
#include "sobolev/errors.hpp"
#include "sobolev/io.hpp"
#include "sobolev/oracle1d.hpp"
#include "sobolev/transport.hpp"
#include "sobolev/validation.hpp"

namespace sobolev::cli {

namespace {

using nlohmann::json;

struct CommonOptions {
  std::string config_path;
  std::optional<double> lambda;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool allow_zero_lambda = false;
};

template <typename T>
void read_opt(const json& j, const char* key, T& dst) {
  if (j.contains(key) && !j[key].is_null()) dst = j[key].get<T>();
}

RunConfig resolve_config(const CommonOptions& opts) {
  RunConfig cfg = opts.config_path.empty() ? RunConfig{} : load_config(opts.config_path);
  if (opts.seed) cfg.feature_map.seed = *opts.seed;
  if (opts.lambda) cfg.lambda_grid = {*opts.lambda};
  if (!opts.out.empty()) cfg.output_path = opts.out;
  cfg.allow_zero_lambda = cfg.allow_zero_lambda || opts.allow_zero_lambda;
  for (double l : cfg.lambda_grid) {
    if (!std::isfinite(l) || l < 0.0) throw InvalidParameter("lambda values must be finite and >= 0");
    if (l == 0.0 && !cfg.allow_zero_lambda)
      throw InvalidParameter("lambda = 0 requires --allow-zero-lambda (the gramian must be nonsingular)");
  }
  return cfg;
}

// Output goes to cfg.output_path when set, otherwise to `fallback`.
void emit(const RunConfig& cfg, const std::string& text, std::ostream& fallback) {
  if (cfg.output_path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream f(cfg.output_path, std::ios::binary);
  if (!f) throw ParseError("cannot write " + cfg.output_path, 0);
  f << text;
}

struct Problem {
  FeatureMap fm;
  SampleSet p;
  SampleSet q;
  DistributionEmbedding ep;
  DistributionEmbedding eq;
  VectorXd delta;
};

Problem load_problem(RunConfig& cfg, const std::string& path_p, const std::string& path_q) {
  SampleSet p = io::read_samples_csv_file(path_p, "p");
  SampleSet q = io::read_samples_csv_file(path_q, "q");
  if (p.dim() != q.dim())
    throw ShapeError("samples of p have dimension " + std::to_string(p.dim()) + ", samples of q " +
                     std::to_string(q.dim()));
  if (!cfg.feature_dim_given) cfg.feature_map.d = p.dim();
  if (cfg.feature_map.d != p.dim())
    throw ShapeError("config feature_map.d = " + std::to_string(cfg.feature_map.d) +
                     " but samples have dimension " + std::to_string(p.dim()));
  FeatureMap fm = make_feature_map(cfg.feature_map);
  auto ep = embed(fm, p, cfg.threads);
  auto eq = embed(fm, q, cfg.threads);
  VectorXd delta = mean_difference(ep.mu, eq.mu);
  return {std::move(fm), std::move(p), std::move(q), std::move(ep), std::move(eq), std::move(delta)};
}

int cmd_discrepancy(RunConfig cfg, const std::string& path_p, const std::string& path_q, std::ostream& out) {
  const Problem pb = load_problem(cfg, path_p, path_q);
  std::string text = "{\n  \"feature_map\": " + io::feature_map_to_json(pb.fm) +
                     ",\n  \"n_p\": " + std::to_string(pb.p.size()) + ",\n  \"n_q\": " + std::to_string(pb.q.size()) +
                     ",\n  \"solutions\": [\n";
  for (std::size_t k = 0; k < cfg.lambda_grid.size(); ++k) {
    const WitnessSolution w = solve_witness(pb.eq.gramian, pb.delta, cfg.lambda_grid[k]);
    text += io::witness_solution_to_json(w, 4);
    text += k + 1 < cfg.lambda_grid.size() ? ",\n" : "\n";
  }
  text += "  ]\n}\n";
  emit(cfg, text, out);
  return kOk;
}

struct GridSpec {
  std::optional<double> lo, hi;
  int points = 101;
};

int cmd_witness_grid(RunConfig cfg, const std::string& path_p, const std::string& path_q, const GridSpec& spec,
                     std::ostream& out) {
  const Problem pb = load_problem(cfg, path_p, path_q);
  const int d = pb.fm.dim_input();
  if (d > 2) throw UnsupportedDimension("witness-grid tabulates d = 1 or 2, samples have d = " + std::to_string(d));
  if (spec.points < 2) throw InvalidParameter("--grid-points must be >= 2");
  const double lambda = cfg.lambda_grid.front();
  const WitnessSolution w = solve_witness(pb.eq.gramian, pb.delta, lambda);

  std::vector<VectorXd> axes;
  for (int a = 0; a < d; ++a) {
    const double lo = spec.lo.value_or(std::min(pb.p.points().col(a).minCoeff(), pb.q.points().col(a).minCoeff()));
    const double hi = spec.hi.value_or(std::max(pb.p.points().col(a).maxCoeff(), pb.q.points().col(a).maxCoeff()));
    if (!(hi > lo)) throw InvalidParameter("grid range is empty");
    axes.push_back(VectorXd::LinSpaced(spec.points, lo, hi));
  }

  std::ostringstream csv;
  csv << (d == 1 ? "x,u,du_dx\n" : "x1,x2,u,du_dx1,du_dx2\n");
  VectorXd x(d);
  const int rows = d == 1 ? spec.points : spec.points * spec.points;
  for (int r = 0; r < rows; ++r) {
    x(0) = axes[0](r % spec.points);
    if (d == 2) x(1) = axes[1](r / spec.points);
    const double u = evaluate_witness(pb.fm, w.coeffs, x);
    const VectorXd v = velocity_field(pb.fm, w.coeffs, x);
    for (int a = 0; a < d; ++a) csv << io::format_double(x(a)) << ',';
    csv << io::format_double(u);
    for (int a = 0; a < d; ++a) csv << ',' << io::format_double(v(a));
    csv << '\n';
  }
  emit(cfg, csv.str(), out);
  return kOk;
}

int cmd_directions(RunConfig cfg, const std::string& path_p, const std::string& path_q, std::ostream& out,
                   std::ostream& err) {
  const Problem pb = load_problem(cfg, path_p, path_q);
  const Spectrum s = spectral_decomposition(pb.eq.gramian);
  const int k = std::min<int>(cfg.top_k_directions, static_cast<int>(s.eigenvalues.size()));

  std::ostringstream csv;
  json checks = json::array();
  csv << "lambda,j,eigenvalue,raw_alignment,filtered_coefficient\n";
  for (double lambda : cfg.lambda_grid) {
    const TransportDecomposition t = transport_coefficients(s, pb.delta, lambda);
    for (int j = 0; j < k; ++j) {
      csv << io::format_double(lambda) << ',' << j + 1 << ',' << io::format_double(s.eigenvalues(j)) << ','
          << io::format_double(t.raw_alignments(j)) << ',' << io::format_double(t.coefficients(j)) << '\n';
    }
    const VectorXd direct = solve_witness(pb.eq.gramian, pb.delta, lambda).coeffs;
    const VectorXd rebuilt = reconstruct_coefficients(s, t);
    const double scale = direct.norm();
    const double rel = scale > 0.0 ? (rebuilt - direct).norm() / scale : rebuilt.norm();
    checks.push_back({{"name", "spectral_reconstruction"}, {"lambda", lambda}, {"relative_error", rel},
                      {"tolerance", 1e-8}, {"passed", rel <= 1e-8}});
  }
  emit(cfg, csv.str(), out);
  (cfg.output_path.empty() ? err : out) << json{{"checks", checks}}.dump() << '\n';
  return kOk;
}

int cmd_validate(RunConfig cfg, std::ostream& out, std::ostream& err) {
  validation::ValidationConfig vc;
  vc.seed = cfg.feature_map.seed;
  vc.grid_resolution = cfg.grid_resolution;
  vc.tolerance_override = cfg.tolerance_override;
  const validation::ValidationReport report = validation::run_validation(vc);
  for (const auto& c : report.checks) {
    err << (c.passed ? "PASS " : "FAIL ") << c.name << "  observed=" << io::format_double(c.observed)
        << "  tolerance=" << io::format_double(c.tolerance) << '\n';
  }
  emit(cfg, report.to_json(), out);
  return report.all_passed() ? kOk : kValidationFailed;
}

int cmd_oracle_1d(RunConfig cfg, const std::string& path, std::ostream& out) {
  const GridDensity g = io::read_grid_density_csv_file(path, cfg.oracle_a, cfg.oracle_b);
  const BoundsCheck b = check_bounds(g);
  std::string text = "{\"grid_points\": " + std::to_string(g.size()) + ", \"a\": " + io::format_double(g.lower_bound()) +
                     ", \"b\": " + io::format_double(g.upper_bound()) + ", \"sobolev\": " + io::format_double(b.s) +
                     ", \"w2\": " + io::format_double(b.w2) + ", \"lower_ok\": " + (b.lower_ok ? "true" : "false") +
                     ", \"upper_ok\": " + (b.upper_ok ? "true" : "false") + "}\n";
  emit(cfg, text, out);
  return kOk;
}

void add_common(CLI::App* cmd, CommonOptions& o, bool with_lambda) {
  cmd->add_option("--config", o.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "feature map / synthetic data seed");
  cmd->add_option("--out", o.out, "output path (stdout when omitted)");
  if (with_lambda) {
    cmd->add_option("--lambda", o.lambda, "single regularization value, replaces the config lambda grid");
    cmd->add_flag("--allow-zero-lambda", o.allow_zero_lambda, "permit lambda = 0 (requires a nonsingular gramian)");
  }
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  RunConfig cfg;
  try {
    const json j = json::parse(json_text);
    if (!j.is_object()) throw ParseError("config must be a JSON object", 0);
    if (j.contains("feature_map")) {
      const json& f = j["feature_map"];
      cfg.feature_dim_given = f.contains("d") && !f["d"].is_null();
      read_opt(f, "d", cfg.feature_map.d);
      read_opt(f, "m", cfg.feature_map.m);
      read_opt(f, "bandwidth", cfg.feature_map.bandwidth);
      read_opt(f, "window_scale", cfg.feature_map.window_scale);
      read_opt(f, "seed", cfg.feature_map.seed);
      if (f.contains("amplitude") && !f["amplitude"].is_null()) cfg.feature_map.amplitude = f["amplitude"].get<double>();
    }
    read_opt(j, "lambda_grid", cfg.lambda_grid);
    read_opt(j, "top_k_directions", cfg.top_k_directions);
    read_opt(j, "output_path", cfg.output_path);
    read_opt(j, "grid_resolution", cfg.grid_resolution);
    read_opt(j, "allow_zero_lambda", cfg.allow_zero_lambda);
    read_opt(j, "threads", cfg.threads);
    if (j.contains("tolerance_override") && !j["tolerance_override"].is_null())
      cfg.tolerance_override = j["tolerance_override"].get<double>();
    if (j.contains("oracle_bounds")) {
      const json& b = j["oracle_bounds"];
      if (b.contains("a") && !b["a"].is_null()) cfg.oracle_a = b["a"].get<double>();
      if (b.contains("b") && !b["b"].is_null()) cfg.oracle_b = b["b"].get<double>();
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what(), 0);
  }
  if (cfg.lambda_grid.empty()) throw InvalidParameter("lambda_grid must be nonempty");
  if (!std::is_sorted(cfg.lambda_grid.begin(), cfg.lambda_grid.end()))
    throw InvalidParameter("lambda_grid must be sorted ascending");
  if (cfg.feature_map.m < 1 || cfg.feature_map.m > kMaxFeatureDim)
    throw InvalidParameter("feature_map.m must be in [1, " + std::to_string(kMaxFeatureDim) + "]");
  if (cfg.top_k_directions < 1) throw InvalidParameter("top_k_directions must be positive");
  if (cfg.grid_resolution < 3) throw InvalidParameter("grid_resolution must be >= 3");
  if (cfg.threads < 1) throw InvalidParameter("threads must be >= 1");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open config " + path, 0);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sobolev discrepancy between two samples via a finite random feature map"};
  app.name("sobolev-discrepancy");
  app.require_subcommand(1);

  CommonOptions opts;
  std::string path_p, path_q, grid_csv;
  GridSpec grid;
  std::optional<double> tolerance, oracle_a, oracle_b;
  std::optional<int> top_k;

  auto* disc = app.add_subcommand("discrepancy", "regularized discrepancy over the lambda grid (JSON)");
  auto* wgrid = app.add_subcommand("witness-grid", "tabulate the witness u(x) and its gradient (CSV)");
  auto* dirs = app.add_subcommand("directions", "top-k principal transport directions (CSV)");
  for (auto* cmd : {disc, wgrid, dirs}) {
    cmd->add_option("samples_p", path_p, "CSV samples of the target p")->required();
    cmd->add_option("samples_q", path_q, "CSV samples of the source q")->required();
    add_common(cmd, opts, true);
  }
  wgrid->add_option("--grid-min", grid.lo, "lower grid bound on every axis (default: data minimum)");
  wgrid->add_option("--grid-max", grid.hi, "upper grid bound on every axis (default: data maximum)");
  wgrid->add_option("--grid-points", grid.points, "nodes per axis")->check(CLI::PositiveNumber);
  dirs->add_option("--top-k", top_k, "number of directions, overrides top_k_directions")->check(CLI::PositiveNumber);

  auto* val = app.add_subcommand("validate", "run the built-in identity and bound checks on synthetic data");
  add_common(val, opts, false);
  val->add_option("--tolerance", tolerance, "replace every check tolerance");

  auto* oracle = app.add_subcommand("oracle-1d", "exact 1-D Sobolev discrepancy and W2 from an (x, p, q) CSV");
  oracle->add_option("grid_csv", grid_csv, "CSV with columns x, p, q")->required();
  add_common(oracle, opts, false);
  oracle->add_option("--a", oracle_a, "density lower bound");
  oracle->add_option("--b", oracle_b, "density upper bound");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    RunConfig cfg = resolve_config(opts);
    if (top_k) cfg.top_k_directions = *top_k;
    if (tolerance) cfg.tolerance_override = tolerance;
    if (oracle_a) cfg.oracle_a = oracle_a;
    if (oracle_b) cfg.oracle_b = oracle_b;
    if (disc->parsed()) return cmd_discrepancy(cfg, path_p, path_q, out);
    if (wgrid->parsed()) return cmd_witness_grid(cfg, path_p, path_q, grid, out);
    if (dirs->parsed()) return cmd_directions(cfg, path_p, path_q, out, err);
    if (val->parsed()) return cmd_validate(cfg, out, err);
    if (oracle->parsed()) return cmd_oracle_1d(cfg, grid_csv, out);
  } catch (const SingularGramian& e) {
    err << "error: " << e.what() << '\n';
    return kSingular;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace sobolev::cli
