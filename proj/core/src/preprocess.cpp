#include "drdist/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "drdist/errors.hpp"
#include "drdist/parallel.hpp"

namespace drdist {

namespace {

using Neighbor = std::pair<double, Index>;

void check_k(std::size_t n, std::size_t k) {
  if (k < 1 || k >= n) {
    throw ParamError("neighbourhood size k = " + std::to_string(k) +
                     " must satisfy 1 <= k <= N-1 = " + std::to_string(n - 1));
  }
}

std::vector<Neighbor> sorted_row_prefix(const DistanceMatrix& d, std::size_t i,
                                        std::size_t count) {
  const auto n = d.size();
  const auto row = d.row(i);
  std::vector<Neighbor> others;
  others.reserve(n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    if (j != i) others.emplace_back(row[j], static_cast<Index>(j));
  }
  if (count < others.size()) {
    std::nth_element(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(count),
                     others.end());
    others.resize(count);
  }
  std::sort(others.begin(), others.end());
  return others;
}

}  // namespace

Metric parse_metric(std::string_view name) {
  if (name == "euclidean") return Metric::Euclidean;
  if (name == "cosine") return Metric::Cosine;
  throw ConfigError("unknown metric '" + std::string(name) +
                    "' (expected euclidean or cosine)");
}

std::string_view to_string(Metric metric) noexcept {
  return metric == Metric::Euclidean ? "euclidean" : "cosine";
}

DistanceMatrix::DistanceMatrix(std::size_t n, Metric metric, std::vector<double> values)
    : n_(n), metric_(metric), values_(std::move(values)) {
  if (values_.size() != n_ * n_) throw ShapeError("distance matrix must be N x N");
}

RankMatrix::RankMatrix(std::size_t n, std::vector<Index> ranks)
    : n_(n), ranks_(std::move(ranks)) {
  if (ranks_.size() != n_ * n_) throw ShapeError("rank matrix must be N x N");
}

KnnTable::KnnTable(std::size_t n, std::size_t k, std::vector<Index> indices)
    : n_(n), k_(k), indices_(std::move(indices)) {
  if (indices_.size() != n_ * k_) throw ShapeError("kNN table must be N x k");
}

KnnTable KnnTable::prefix(std::size_t k) const {
  if (k < 1 || k > k_) {
    throw ParamError("cannot slice a " + std::to_string(k_) + "-NN table to k = " +
                     std::to_string(k));
  }
  std::vector<Index> out;
  out.reserve(n_ * k);
  for (std::size_t i = 0; i < n_; ++i) {
    const auto row = neighbors(i, k);
    out.insert(out.end(), row.begin(), row.end());
  }
  return KnnTable(n_, k, std::move(out));
}

DistanceMatrix compute_distance_matrix(const PointMatrix& m, Metric metric) {
  const auto n = m.n_points();
  const auto dim = m.dim();
  std::vector<double> values(n * n, 0.0);

  if (metric == Metric::Euclidean) {
    parallel_for(n, [&](std::size_t i) {
      const auto a = m.row(i);
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto b = m.row(j);
        double sum = 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
          const double diff = a[c] - b[c];
          sum += diff * diff;
        }
        const double dist = std::sqrt(sum);
        values[i * n + j] = dist;
        values[j * n + i] = dist;
      }
    });
  } else {
    std::vector<double> norms(n);
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (double v : m.row(i)) sum += v * v;
      norms[i] = std::sqrt(sum);
    }
    parallel_for(n, [&](std::size_t i) {
      const auto a = m.row(i);
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto b = m.row(j);
        double similarity = 0.0;
        if (norms[i] > 0.0 && norms[j] > 0.0) {
          double dot = 0.0;
          for (std::size_t c = 0; c < dim; ++c) dot += a[c] * b[c];
          similarity = dot / (norms[i] * norms[j]);
        }
        const double dist = std::clamp(1.0 - similarity, 0.0, 2.0);
        values[i * n + j] = dist;
        values[j * n + i] = dist;
      }
    });
  }
  return DistanceMatrix(n, metric, std::move(values));
}

RankMatrix compute_rank_matrix(const DistanceMatrix& d) {
  const auto n = d.size();
  std::vector<Index> ranks(n * n, 0);
  parallel_for(n, [&](std::size_t i) {
    const auto order = sorted_row_prefix(d, i, n - 1);
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      ranks[i * n + static_cast<std::size_t>(order[pos].second)] =
          static_cast<Index>(pos + 1);
    }
  });
  return RankMatrix(n, std::move(ranks));
}

KnnTable compute_knn(const RankMatrix& r, std::size_t k) {
  const auto n = r.size();
  check_k(n, k);
  std::vector<Index> indices(n * k, -1);
  parallel_for(n, [&](std::size_t i) {
    const auto row = r.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      const auto rank = static_cast<std::size_t>(row[j]);
      if (j != i && rank <= k) indices[i * k + rank - 1] = static_cast<Index>(j);
    }
  });
  return KnnTable(n, k, std::move(indices));
}

KnnTable compute_knn(const DistanceMatrix& d, std::size_t k) {
  const auto n = d.size();
  check_k(n, k);
  std::vector<Index> indices(n * k);
  parallel_for(n, [&](std::size_t i) {
    const auto nearest = sorted_row_prefix(d, i, k);
    for (std::size_t c = 0; c < k; ++c) indices[i * k + c] = nearest[c].second;
  });
  return KnnTable(n, k, std::move(indices));
}

SpaceBlocks build_space_blocks(const PointMatrix& m, bool need_dist, bool need_rank,
                               std::optional<std::size_t> knn_k, Metric metric,
                               BlockCounts* counts) {
  if (knn_k) check_k(m.n_points(), *knn_k);
  BlockCounts local;
  SpaceBlocks blocks;
  // Ranks and kNN are both derived from distances.
  if (need_dist || need_rank || knn_k) {
    blocks.dist = std::make_shared<const DistanceMatrix>(compute_distance_matrix(m, metric));
    ++local.distances;
  }
  if (need_rank) {
    blocks.rank = std::make_shared<const RankMatrix>(compute_rank_matrix(*blocks.dist));
    ++local.ranks;
  }
  if (knn_k) {
    blocks.knn = blocks.rank
                     ? std::make_shared<const KnnTable>(compute_knn(*blocks.rank, *knn_k))
                     : std::make_shared<const KnnTable>(compute_knn(*blocks.dist, *knn_k));
    ++local.knn;
  }
  if (counts) *counts += local;
  return blocks;
}

const DistanceMatrix& PreprocessCache::dist_high() const {
  if (!high_.dist) throw ConfigError("high-space distance matrix not in cache");
  return *high_.dist;
}
const DistanceMatrix& PreprocessCache::dist_low() const {
  if (!low_.dist) throw ConfigError("low-space distance matrix not in cache");
  return *low_.dist;
}
const RankMatrix& PreprocessCache::rank_high() const {
  if (!high_.rank) throw ConfigError("high-space rank matrix not in cache");
  return *high_.rank;
}
const RankMatrix& PreprocessCache::rank_low() const {
  if (!low_.rank) throw ConfigError("low-space rank matrix not in cache");
  return *low_.rank;
}
const KnnTable& PreprocessCache::knn_high(std::size_t k) const {
  if (!high_.knn || high_.knn->k() < k) {
    throw ConfigError("high-space " + std::to_string(k) + "-NN table not in cache");
  }
  return *high_.knn;
}
const KnnTable& PreprocessCache::knn_low(std::size_t k) const {
  if (!low_.knn || low_.knn->k() < k) {
    throw ConfigError("low-space " + std::to_string(k) + "-NN table not in cache");
  }
  return *low_.knn;
}

PreprocessCache build_cache(const PointMatrix& x, const PointMatrix& y,
                            const PreprocessPlan& plan) {
  if (x.n_points() != y.n_points()) {
    throw ShapeError("high and low matrices differ in N: " +
                     std::to_string(x.n_points()) + " vs " +
                     std::to_string(y.n_points()));
  }
  BlockCounts counts;
  auto high = build_space_blocks(x, plan.need_dist_high, plan.need_rank_high,
                                 plan.knn_k_high, plan.metric, &counts);
  auto low = build_space_blocks(y, plan.need_dist_low, plan.need_rank_low,
                                plan.knn_k_low, plan.metric, &counts);
  return PreprocessCache(std::move(high), std::move(low), counts);
}

}  // namespace drdist
