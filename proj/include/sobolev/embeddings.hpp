#pragma once

#include <cstddef>
#include <string>

#include <Eigen/Dense>

#include "sobolev/feature_map.hpp"
#include "sobolev/grid_density.hpp"

namespace sobolev {

// Dense m x m gramians and O(m^3) solves: larger feature spaces are refused.
inline constexpr int kMaxFeatureDim = 4096;

// N points in R^d, one per row.
class SampleSet {
 public:
  explicit SampleSet(MatrixXd points, std::string label = {});

  const MatrixXd& points() const { return points_; }
  const std::string& label() const { return label_; }
  int size() const { return static_cast<int>(points_.rows()); }
  int dim() const { return static_cast<int>(points_.cols()); }

 private:
  MatrixXd points_;
  std::string label_;
};

/// Kernel mean embedding and kernel derivative gramian of one distribution:
///
///   mu = E[phi(x)],   D = E[J(x)^T J(x)],
///
/// where J is the d x m Jacobian of the feature map. D is symmetric PSD.
struct DistributionEmbedding {
  VectorXd mu;
  MatrixXd gramian;
  std::size_t sample_count = 0;
};

VectorXd mean_embedding(const FeatureMap& fm, const SampleSet& s);
MatrixXd derivative_gramian(const FeatureMap& fm, const SampleSet& s);

// Both statistics in one pass. With threads > 1 the rows are split into
// contiguous chunks whose embeddings are combined by merge().
DistributionEmbedding embed(const FeatureMap& fm, const SampleSet& s, int threads = 1);

// Sample-count weighted average of two embeddings of disjoint sample sets.
DistributionEmbedding merge(const DistributionEmbedding& a, const DistributionEmbedding& b);

// Population mu and D of one side of a 1-D tabulated density, by the
// trapezoid rule on its grid.
DistributionEmbedding quadrature_embedding(const FeatureMap& fm, const GridDensity& g, DensitySide which);

// delta = mu_p - mu_q
VectorXd mean_difference(const VectorXd& mu_p, const VectorXd& mu_q);

}  // namespace sobolev
