#include "sobolev/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <vector>

#include "sobolev/errors.hpp"

namespace sobolev {

namespace {

void check_compatible(const FeatureMap& fm, const SampleSet& s) {
  if (s.dim() != fm.dim_input())
    throw ShapeError("samples have dimension " + std::to_string(s.dim()) + ", feature map expects " +
                     std::to_string(fm.dim_input()));
  if (fm.dim_feature() > kMaxFeatureDim)
    throw InvalidParameter("feature dimension exceeds " + std::to_string(kMaxFeatureDim));
}

// Unnormalized sums over rows [begin, end).
DistributionEmbedding accumulate(const FeatureMap& fm, const MatrixXd& points, int begin, int end) {
  const int m = fm.dim_feature();
  DistributionEmbedding out{VectorXd::Zero(m), MatrixXd::Zero(m, m), static_cast<std::size_t>(end - begin)};
  VectorXd phi;
  MatrixXd jac;
  for (int i = begin; i < end; ++i) {
    fm.evaluate_with_jacobian(points.row(i).transpose(), phi, jac);
    out.mu += phi;
    out.gramian.selfadjointView<Eigen::Lower>().rankUpdate(jac.transpose());
  }
  return out;
}

void finalize(DistributionEmbedding& e) {
  const double inv = 1.0 / static_cast<double>(e.sample_count);
  e.mu *= inv;
  e.gramian.triangularView<Eigen::StrictlyUpper>() = e.gramian.transpose();
  e.gramian *= inv;
}

}  // namespace

SampleSet::SampleSet(MatrixXd points, std::string label) : points_(std::move(points)), label_(std::move(label)) {
  if (points_.rows() < 1) throw InvalidParameter("sample set is empty");
  if (points_.cols() < 1) throw InvalidParameter("sample points need at least one coordinate");
  if (!points_.allFinite()) throw DomainError("sample set contains non-finite values");
}

VectorXd mean_embedding(const FeatureMap& fm, const SampleSet& s) {
  check_compatible(fm, s);
  VectorXd mu = VectorXd::Zero(fm.dim_feature());
  for (int i = 0; i < s.size(); ++i) mu += fm.evaluate(s.points().row(i).transpose());
  return mu / static_cast<double>(s.size());
}

MatrixXd derivative_gramian(const FeatureMap& fm, const SampleSet& s) {
  check_compatible(fm, s);
  DistributionEmbedding e = accumulate(fm, s.points(), 0, s.size());
  finalize(e);
  return std::move(e.gramian);
}

DistributionEmbedding embed(const FeatureMap& fm, const SampleSet& s, int threads) {
  check_compatible(fm, s);
  if (threads < 1) throw InvalidParameter("threads must be >= 1");
  const int n = s.size();
  const int chunks = std::clamp(threads, 1, n);
  if (chunks == 1) {
    DistributionEmbedding e = accumulate(fm, s.points(), 0, n);
    finalize(e);
    return e;
  }
  std::vector<std::future<DistributionEmbedding>> parts;
  parts.reserve(chunks);
  for (int c = 0; c < chunks; ++c) {
    const int begin = static_cast<int>(static_cast<long long>(n) * c / chunks);
    const int end = static_cast<int>(static_cast<long long>(n) * (c + 1) / chunks);
    parts.push_back(std::async(std::launch::async, [&fm, &s, begin, end] {
      DistributionEmbedding e = accumulate(fm, s.points(), begin, end);
      finalize(e);
      return e;
    }));
  }
  DistributionEmbedding total = parts.front().get();
  for (int c = 1; c < chunks; ++c) total = merge(total, parts[c].get());
  return total;
}

DistributionEmbedding merge(const DistributionEmbedding& a, const DistributionEmbedding& b) {
  if (a.mu.size() != b.mu.size() || a.gramian.rows() != b.gramian.rows())
    throw ShapeError("cannot merge embeddings of different feature dimension");
  if (a.sample_count == 0) return b;
  if (b.sample_count == 0) return a;
  const double n = static_cast<double>(a.sample_count + b.sample_count);
  const double wa = a.sample_count / n;
  const double wb = b.sample_count / n;
  return {wa * a.mu + wb * b.mu, wa * a.gramian + wb * b.gramian, a.sample_count + b.sample_count};
}

DistributionEmbedding quadrature_embedding(const FeatureMap& fm, const GridDensity& g, DensitySide which) {
  if (fm.dim_input() != 1) throw ShapeError("quadrature embeddings require a 1-D feature map");
  if (fm.dim_feature() > kMaxFeatureDim)
    throw InvalidParameter("feature dimension exceeds " + std::to_string(kMaxFeatureDim));
  const VectorXd& density = g.values(which);
  if (density.minCoeff() < 0.0) throw InvalidParameter("density must be nonnegative");
  const VectorXd w = trapezoid_weights(g.grid()).cwiseProduct(density);
  const double mass = w.sum();
  if (std::abs(mass - 1.0) > GridDensity::kMassTolerance)
    throw InvalidParameter("density has mass " + std::to_string(mass) + ", expected 1");

  const int m = fm.dim_feature();
  DistributionEmbedding out{VectorXd::Zero(m), MatrixXd::Zero(m, m), static_cast<std::size_t>(g.size())};
  VectorXd phi;
  MatrixXd jac;
  VectorXd x(1);
  for (int i = 0; i < g.size(); ++i) {
    if (w(i) == 0.0) continue;
    x(0) = g.grid()(i);
    fm.evaluate_with_jacobian(x, phi, jac);
    out.mu += w(i) * phi;
    out.gramian.selfadjointView<Eigen::Lower>().rankUpdate(jac.transpose(), w(i));
  }
  out.gramian.triangularView<Eigen::StrictlyUpper>() = out.gramian.transpose();
  return out;
}

VectorXd mean_difference(const VectorXd& mu_p, const VectorXd& mu_q) {
  if (mu_p.size() != mu_q.size())
    throw ShapeError("embeddings have lengths " + std::to_string(mu_p.size()) + " and " +
                     std::to_string(mu_q.size()));
  return mu_p - mu_q;
}

}  // namespace sobolev
