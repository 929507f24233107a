#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "drdist/matrix.hpp"
#include "drdist/preprocess.hpp"

namespace drdist {

/// Seeded generator with a platform-independent draw sequence
/// (mt19937_64 plus an explicit 53-bit mapping to [0, 1)).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). n must be positive.
  std::size_t below(std::size_t n) {
    const auto v = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return v < n ? v : n - 1;
  }

 private:
  std::mt19937_64 engine_;
};

struct KMeansOptions {
  std::size_t max_iterations = 300;
  double relative_tolerance = 1e-6;
};

/// Lloyd's k-means over the listed rows of `points`, seeded with D^2
/// (k-means++) sampling drawn from `rng`. Returns one cluster id per member,
/// relabelled in order of first appearance.
std::vector<Index> kmeans(const PointMatrix& points, std::span<const Index> members,
                          std::size_t n_clusters, Rng& rng,
                          const KMeansOptions& options = {});

/// Density-based single-linkage partitioner (a compact HDBSCAN variant):
/// mutual-reachability MST (Kruskal, ties by member index), condensed tree
/// with `min_cluster_size`, excess-of-mass selection excluding the root. Noise points join the part of
/// their nearest non-noise member. Returns part ids per member, relabelled in
/// order of first appearance; a single part when nothing is selected.
std::vector<Index> density_partition(const DistanceMatrix& distances,
                                     std::span<const Index> members,
                                     std::size_t min_cluster_size);

/// Relabels ids so they appear as 0, 1, 2, ... in order of first occurrence.
std::vector<Index> canonical_labels(std::span<const Index> ids);

double adjusted_rand_index(std::span<const Index> a, std::span<const Index> b);
/// Arithmetic-mean normalisation; 1 when both partitions are trivial.
double normalized_mutual_information(std::span<const Index> a, std::span<const Index> b);

}  // namespace drdist
