#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "drdist/matrix.hpp"

namespace drdist {

enum class Metric { Euclidean, Cosine };

/// Throws ConfigError for anything other than "euclidean" / "cosine".
Metric parse_metric(std::string_view name);
std::string_view to_string(Metric metric) noexcept;

/// Dense symmetric N x N distances with a zero diagonal. Cosine distance is
/// 1 - cosine similarity clamped to [0, 2].
class DistanceMatrix {
 public:
  DistanceMatrix(std::size_t n, Metric metric, std::vector<double> values);

  std::size_t size() const noexcept { return n_; }
  Metric metric() const noexcept { return metric_; }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return values_[i * n_ + j];
  }
  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * n_, n_};
  }

 private:
  std::size_t n_;
  Metric metric_;
  std::vector<double> values_;
};

/// ranks(i, j) is the 1-based position of j among i's neighbours sorted by
/// ascending distance, ties broken by ascending index. ranks(i, i) == 0.
class RankMatrix {
 public:
  RankMatrix(std::size_t n, std::vector<Index> ranks);

  std::size_t size() const noexcept { return n_; }
  Index operator()(std::size_t i, std::size_t j) const noexcept {
    return ranks_[i * n_ + j];
  }
  std::span<const Index> row(std::size_t i) const noexcept {
    return {ranks_.data() + i * n_, n_};
  }

 private:
  std::size_t n_;
  std::vector<Index> ranks_;
};

/// The k nearest neighbours of every point, nearest first, self excluded.
/// Any k2 <= k is served by taking the first k2 columns.
class KnnTable {
 public:
  KnnTable(std::size_t n, std::size_t k, std::vector<Index> indices);

  std::size_t size() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }

  std::span<const Index> neighbors(std::size_t i) const noexcept {
    return {indices_.data() + i * k_, k_};
  }
  /// First `k` neighbours of i. Requires k <= this->k().
  std::span<const Index> neighbors(std::size_t i, std::size_t k) const noexcept {
    return {indices_.data() + i * k_, k};
  }

  KnnTable prefix(std::size_t k) const;

  bool operator==(const KnnTable&) const = default;

 private:
  std::size_t n_;
  std::size_t k_;
  std::vector<Index> indices_;
};

DistanceMatrix compute_distance_matrix(const PointMatrix& m, Metric metric);
RankMatrix compute_rank_matrix(const DistanceMatrix& d);

/// kNN by inverting rank rows. Throws ParamError unless 1 <= k <= N-1.
KnnTable compute_knn(const RankMatrix& r, std::size_t k);
/// kNN by partial selection straight from distances, same tie-break.
KnnTable compute_knn(const DistanceMatrix& d, std::size_t k);

/// The minimal set of blocks an evaluation needs.
struct PreprocessPlan {
  bool need_dist_high = false;
  bool need_dist_low = false;
  bool need_rank_high = false;
  bool need_rank_low = false;
  std::optional<std::size_t> knn_k_high;
  std::optional<std::size_t> knn_k_low;
  Metric metric = Metric::Euclidean;

  bool operator==(const PreprocessPlan&) const = default;
};

/// How many blocks were actually computed while building a cache.
struct BlockCounts {
  std::size_t distances = 0;
  std::size_t ranks = 0;
  std::size_t knn = 0;

  std::size_t total() const noexcept { return distances + ranks + knn; }
  BlockCounts& operator+=(const BlockCounts& o) noexcept {
    distances += o.distances;
    ranks += o.ranks;
    knn += o.knn;
    return *this;
  }
};

/// Blocks for one space. Shared pointers let an engine keep the high-space
/// blocks across many embeddings.
struct SpaceBlocks {
  std::shared_ptr<const DistanceMatrix> dist;
  std::shared_ptr<const RankMatrix> rank;
  std::shared_ptr<const KnnTable> knn;
};

/// Computes the requested blocks for one space. kNN is derived from the rank
/// matrix when one is built, otherwise straight from distances.
SpaceBlocks build_space_blocks(const PointMatrix& m, bool need_dist,
                               bool need_rank, std::optional<std::size_t> knn_k,
                               Metric metric, BlockCounts* counts = nullptr);

class PreprocessCache {
 public:
  PreprocessCache() = default;
  PreprocessCache(SpaceBlocks high, SpaceBlocks low, BlockCounts counts)
      : high_(std::move(high)), low_(std::move(low)), counts_(counts) {}

  bool has_dist_high() const noexcept { return high_.dist != nullptr; }
  bool has_dist_low() const noexcept { return low_.dist != nullptr; }
  bool has_rank_high() const noexcept { return high_.rank != nullptr; }
  bool has_rank_low() const noexcept { return low_.rank != nullptr; }
  bool has_knn_high() const noexcept { return high_.knn != nullptr; }
  bool has_knn_low() const noexcept { return low_.knn != nullptr; }

  // Accessors throw ConfigError when the block is absent (or the stored kNN
  // is smaller than `k`).
  const DistanceMatrix& dist_high() const;
  const DistanceMatrix& dist_low() const;
  const RankMatrix& rank_high() const;
  const RankMatrix& rank_low() const;
  const KnnTable& knn_high(std::size_t k) const;
  const KnnTable& knn_low(std::size_t k) const;

  const SpaceBlocks& high() const noexcept { return high_; }
  const SpaceBlocks& low() const noexcept { return low_; }
  const BlockCounts& counts() const noexcept { return counts_; }

 private:
  SpaceBlocks high_;
  SpaceBlocks low_;
  BlockCounts counts_;
};

/// Builds exactly the blocks in `plan` for both spaces. Throws ShapeError if
/// x and y differ in N, ParamError for an out-of-range k.
PreprocessCache build_cache(const PointMatrix& x, const PointMatrix& y,
                            const PreprocessPlan& plan);

}  // namespace drdist
