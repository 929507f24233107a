#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "drdist/matrix.hpp"
#include "drdist/preprocess.hpp"
#include "drdist/registry.hpp"
#include "drdist/spec.hpp"

namespace drdist {

/// Scores of one spec entry. `locals` is present only when local output was
/// requested and the measure supports it; each local vector has length N and
/// averages to the global score of the same base name.
struct MeasureOutput {
  std::string id;
  std::map<std::string, double> globals;
  std::optional<std::map<std::string, std::vector<double>>> locals;
  std::map<std::string, Orientation> orientation;
};

struct MeasureInputs {
  const PointMatrix* x = nullptr;
  const PointMatrix* y = nullptr;
  const PreprocessCache* cache = nullptr;
  const LabelVector* labels = nullptr;
};

/// Validates an entry against a dataset of `n` points before any work is
/// done: registry params, neighbourhood bounds, label presence and shape.
void check_entry(const SpecEntry& entry, std::size_t n, const LabelVector* labels);

/// Runs one measure over an already-built cache.
MeasureOutput evaluate_measure(const SpecEntry& entry, const MeasureInputs& inputs,
                               bool return_local);

namespace measures {

/// A global score pair with the per-point scores that average to it.
struct PairScores {
  double first = 0.0;
  double second = 0.0;
  std::vector<double> local_first;
  std::vector<double> local_second;
};

struct SingleScore {
  double value = 0.0;
  std::vector<double> local;
};

// ---- local -------------------------------------------------------------

/// Trustworthiness (first) and continuity (second). Requires 2k < N.
PairScores trustworthiness_continuity(const RankMatrix& rank_high,
                                      const RankMatrix& rank_low,
                                      const KnnTable& knn_high,
                                      const KnnTable& knn_low, std::size_t k);

/// As trustworthiness_continuity, but only neighbours of a different class
/// are penalised.
PairScores class_aware_trustworthiness_continuity(const RankMatrix& rank_high,
                                                  const RankMatrix& rank_low,
                                                  const KnnTable& knn_high,
                                                  const KnnTable& knn_low,
                                                  std::size_t k,
                                                  const LabelVector& labels);

/// 1 - MRRE for false (first) and missing (second) neighbours.
PairScores mean_relative_rank_errors(const RankMatrix& rank_high,
                                     const RankMatrix& rank_low,
                                     const KnnTable& knn_high,
                                     const KnnTable& knn_low, std::size_t k);

SingleScore local_continuity_meta_criterion(const KnnTable& knn_high,
                                            const KnnTable& knn_low, std::size_t k);

SingleScore neighborhood_hit(const KnnTable& knn_low, std::size_t k,
                             const LabelVector& labels);

/// Mean absolute difference of max-normalised SNN similarities over all pairs.
double neighbor_dissimilarity(const KnnTable& knn_high, const KnnTable& knn_low,
                              std::size_t k);

/// Mean local Procrustes residual over each point and its k high-space
/// neighbours, after optimal translation, orthogonal map and isotropic scale.
double procrustes(const PointMatrix& x, const PointMatrix& y,
                  const KnnTable& knn_high, std::size_t k);

// ---- cluster-level -----------------------------------------------------

enum class Partitioner { Density, KMeans };

struct SncOptions {
  std::size_t k = 20;
  std::size_t iterations = 200;
  Partitioner clustering = Partitioner::Density;
  std::uint64_t seed = 42;
  std::size_t min_cluster_size = 5;
  std::size_t n_clusters = 3;
  std::size_t walk_count = 10;
  std::size_t walk_length = 8;
};

/// Steadiness (first) and cohesiveness (second).
PairScores steadiness_cohesiveness(const PointMatrix& x, const PointMatrix& y,
                                   const DistanceMatrix& dist_high,
                                   const DistanceMatrix& dist_low,
                                   const KnnTable& knn_high, const KnnTable& knn_low,
                                   const SncOptions& options);

double distance_consistency(const PointMatrix& y, const LabelVector& labels);

enum class InternalIndex { Silhouette, CalinskiHarabasz, DaviesBouldin };

double internal_validation(const PointMatrix& y, const DistanceMatrix& dist_low,
                           const LabelVector& labels, InternalIndex index);

enum class ExternalIndex { Ari, Nmi };

/// k-means on the embedding compared against the labels. n_clusters == 0
/// means "number of classes".
double clustering_validation(const PointMatrix& y, const LabelVector& labels,
                             ExternalIndex index, std::size_t n_clusters,
                             std::uint64_t seed);

// ---- global ------------------------------------------------------------

double stress(const DistanceMatrix& dist_high, const DistanceMatrix& dist_low);

/// Normalised Gaussian density per point, distances scaled by their maximum.
std::vector<double> kernel_density(const DistanceMatrix& d, double sigma);

double kl_divergence(const DistanceMatrix& dist_high, const DistanceMatrix& dist_low,
                     double sigma);
double distance_to_measure(const DistanceMatrix& dist_high,
                           const DistanceMatrix& dist_low, double sigma);

/// max_k == 0 sums neighbour orders 1..N-1.
double topographic_product(const DistanceMatrix& dist_high,
                           const DistanceMatrix& dist_low,
                           const RankMatrix& rank_high, const RankMatrix& rank_low,
                           std::size_t max_k = 0);

double pearson_r(const DistanceMatrix& dist_high, const DistanceMatrix& dist_low);
double spearman_rho(const DistanceMatrix& dist_high, const DistanceMatrix& dist_low);

}  // namespace measures
}  // namespace drdist
