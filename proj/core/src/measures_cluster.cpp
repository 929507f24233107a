#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "drdist/clustering.hpp"
#include "drdist/errors.hpp"
#include "drdist/measures.hpp"
#include "drdist/snn.hpp"

namespace drdist::measures {

namespace {

// Points visited by `walk_count` weighted random walks from a random seed.
std::vector<Index> extract_cluster(const SnnGraph& graph, const SncOptions& options,
                                   Rng& rng, std::vector<char>& visited) {
  const auto seed = rng.below(graph.size());
  std::vector<Index> members{static_cast<Index>(seed)};
  visited[seed] = 1;
  for (std::size_t w = 0; w < options.walk_count; ++w) {
    std::size_t current = seed;
    for (std::size_t step = 0; step < options.walk_length; ++step) {
      const auto row = graph.row(current);
      if (row.empty()) break;
      double total = 0.0;
      for (const auto& e : row) total += e.weight;
      const double target = rng.uniform() * total;
      double cumulative = 0.0;
      std::size_t next = static_cast<std::size_t>(row.back().target);
      for (const auto& e : row) {
        cumulative += e.weight;
        if (cumulative > target) {
          next = static_cast<std::size_t>(e.target);
          break;
        }
      }
      if (!visited[next]) {
        visited[next] = 1;
        members.push_back(static_cast<Index>(next));
      }
      current = next;
    }
  }
  for (auto p : members) visited[static_cast<std::size_t>(p)] = 0;
  std::sort(members.begin(), members.end());
  return members;
}

struct Accumulator {
  std::vector<double> distortion;
  std::vector<double> weight;
};

// One round: partition `members` in the checking space and charge every pair
// of parts whose SNN dissimilarity grew in the checking space relative to the
// walking space.
void score_round(const std::vector<Index>& members, const std::vector<Index>& parts,
                 const SnnGraph& walk_graph, const SnnGraph& check_graph,
                 std::vector<Index>& part_of, Accumulator& acc) {
  const auto n_parts = static_cast<std::size_t>(*std::max_element(parts.begin(), parts.end())) + 1;
  if (n_parts < 2) return;

  std::vector<double> size(n_parts, 0.0);
  for (std::size_t t = 0; t < members.size(); ++t) {
    part_of[static_cast<std::size_t>(members[t])] = parts[t];
    size[static_cast<std::size_t>(parts[t])] += 1.0;
  }

  // Raw SNN mass between parts (a < b), integers summed exactly.
  std::vector<double> walk_mass(n_parts * n_parts, 0.0);
  std::vector<double> check_mass(n_parts * n_parts, 0.0);
  auto gather = [&](const SnnGraph& graph, std::vector<double>& mass) {
    for (auto p : members) {
      const auto pa = part_of[static_cast<std::size_t>(p)];
      for (const auto& e : graph.row(static_cast<std::size_t>(p))) {
        const auto pb = part_of[static_cast<std::size_t>(e.target)];
        if (pb > pa) mass[static_cast<std::size_t>(pa) * n_parts + static_cast<std::size_t>(pb)] += e.weight;
      }
    }
  };
  gather(walk_graph, walk_mass);
  gather(check_graph, check_mass);

  std::vector<double> value(n_parts * n_parts, 0.0);
  for (std::size_t a = 0; a < n_parts; ++a) {
    for (std::size_t b = a + 1; b < n_parts; ++b) {
      const double pairs = size[a] * size[b];
      const auto cell = a * n_parts + b;
      auto dissimilarity = [&](const SnnGraph& g, double mass) {
        const double max = g.max_similarity();
        return 1.0 - (max > 0.0 ? mass / (max * pairs) : 0.0);
      };
      const double d_walk = dissimilarity(walk_graph, walk_mass[cell]);
      const double d_check = dissimilarity(check_graph, check_mass[cell]);
      value[cell] = std::max(0.0, d_check - d_walk);
    }
  }

  for (auto p : members) {
    const auto pa = static_cast<std::size_t>(part_of[static_cast<std::size_t>(p)]);
    for (std::size_t b = 0; b < n_parts; ++b) {
      if (b == pa) continue;
      const auto cell = std::min(pa, b) * n_parts + std::max(pa, b);
      acc.distortion[static_cast<std::size_t>(p)] += value[cell] * size[b];
      acc.weight[static_cast<std::size_t>(p)] += size[b];
    }
  }
  for (auto p : members) part_of[static_cast<std::size_t>(p)] = -1;
}

void run_direction(const SnnGraph& walk_graph, const SnnGraph& check_graph,
                   const PointMatrix& check_points, const DistanceMatrix& check_dist,
                   const SncOptions& options, Rng& rng, Accumulator& acc) {
  const auto n = walk_graph.size();
  std::vector<char> visited(n, 0);
  std::vector<Index> part_of(n, -1);
  for (std::size_t it = 0; it < options.iterations; ++it) {
    const auto members = extract_cluster(walk_graph, options, rng, visited);
    if (members.size() < 2) continue;
    const auto parts =
        options.clustering == Partitioner::Density
            ? density_partition(check_dist, members, options.min_cluster_size)
            : kmeans(check_points, members, options.n_clusters, rng);
    score_round(members, parts, walk_graph, check_graph, part_of, acc);
  }
}

std::vector<double> finish(const Accumulator& acc, double& mean) {
  const auto n = acc.weight.size();
  std::vector<double> local(n, 1.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (acc.weight[i] > 0.0) local[i] = 1.0 - acc.distortion[i] / acc.weight[i];
    total += local[i];
  }
  mean = total / static_cast<double>(n);
  return local;
}

std::vector<std::vector<double>> class_centroids(const PointMatrix& y,
                                                 const LabelVector& labels,
                                                 std::vector<double>* counts_out = nullptr) {
  const auto c = labels.n_classes();
  const auto dim = y.dim();
  std::vector<std::vector<double>> centroids(c, std::vector<double>(dim, 0.0));
  std::vector<double> counts(c, 0.0);
  const auto cls = labels.class_index();
  for (std::size_t i = 0; i < y.n_points(); ++i) {
    const auto q = static_cast<std::size_t>(cls[i]);
    const auto r = y.row(i);
    for (std::size_t d = 0; d < dim; ++d) centroids[q][d] += r[d];
    counts[q] += 1.0;
  }
  for (std::size_t q = 0; q < c; ++q) {
    for (auto& v : centroids[q]) v /= counts[q];
  }
  if (counts_out) *counts_out = std::move(counts);
  return centroids;
}

double squared_distance(std::span<const double> a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    const double diff = a[d] - b[d];
    s += diff * diff;
  }
  return s;
}

void require_labels(const LabelVector& labels, std::size_t n, bool two_classes) {
  if (labels.size() != n) throw ShapeError("labels length does not match N");
  if (two_classes && labels.n_classes() < 2) {
    throw ParamError("at least 2 classes are required, got " +
                     std::to_string(labels.n_classes()));
  }
}

}  // namespace

PairScores steadiness_cohesiveness(const PointMatrix& x, const PointMatrix& y,
                                   const DistanceMatrix& dist_high,
                                   const DistanceMatrix& dist_low,
                                   const KnnTable& knn_high, const KnnTable& knn_low,
                                   const SncOptions& options) {
  const auto n = x.n_points();
  if (y.n_points() != n) throw ShapeError("high and low matrices differ in N");
  if (options.k < 1 || options.k >= n) {
    throw ParamError("snc k = " + std::to_string(options.k) +
                     " must satisfy 1 <= k <= N-1");
  }
  if (options.iterations < 1) throw ParamError("snc iterations must be >= 1");

  const SnnGraph high(knn_high, options.k);
  const SnnGraph low(knn_low, options.k);
  Rng rng(options.seed);

  Accumulator steady{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  Accumulator cohesive = steady;
  // False groups: gathered in the embedding, checked in the data space.
  run_direction(low, high, x, dist_high, options, rng, steady);
  // Missing groups: gathered in the data space, checked in the embedding.
  run_direction(high, low, y, dist_low, options, rng, cohesive);

  PairScores out;
  out.local_first = finish(steady, out.first);
  out.local_second = finish(cohesive, out.second);
  return out;
}

double distance_consistency(const PointMatrix& y, const LabelVector& labels) {
  require_labels(labels, y.n_points(), false);
  const auto centroids = class_centroids(y, labels);
  const auto cls = labels.class_index();
  std::size_t consistent = 0;
  for (std::size_t i = 0; i < y.n_points(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_q = 0;
    for (std::size_t q = 0; q < centroids.size(); ++q) {
      const double d = squared_distance(y.row(i), centroids[q]);
      if (d < best) {
        best = d;
        best_q = q;
      }
    }
    if (best_q == static_cast<std::size_t>(cls[i])) ++consistent;
  }
  return static_cast<double>(consistent) / static_cast<double>(y.n_points());
}

double internal_validation(const PointMatrix& y, const DistanceMatrix& dist_low,
                           const LabelVector& labels, InternalIndex index) {
  const auto n = y.n_points();
  require_labels(labels, n, true);
  const auto c = labels.n_classes();
  const auto cls = labels.class_index();

  if (index == InternalIndex::Silhouette) {
    std::vector<double> class_size(c, 0.0);
    for (auto q : cls) class_size[static_cast<std::size_t>(q)] += 1.0;
    double total = 0.0;
    std::vector<double> mass(c);
    for (std::size_t i = 0; i < n; ++i) {
      const auto own = static_cast<std::size_t>(cls[i]);
      if (class_size[own] <= 1.0) continue;  // singleton: silhouette 0
      std::fill(mass.begin(), mass.end(), 0.0);
      for (std::size_t j = 0; j < n; ++j) mass[static_cast<std::size_t>(cls[j])] += dist_low(i, j);
      const double a = mass[own] / (class_size[own] - 1.0);
      double b = std::numeric_limits<double>::infinity();
      for (std::size_t q = 0; q < c; ++q) {
        if (q != own) b = std::min(b, mass[q] / class_size[q]);
      }
      const double denom = std::max(a, b);
      if (denom > 0.0) total += (b - a) / denom;
    }
    return total / static_cast<double>(n);
  }

  std::vector<double> counts;
  const auto centroids = class_centroids(y, labels, &counts);
  if (index == InternalIndex::CalinskiHarabasz) {
    std::vector<double> overall(y.dim(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = y.row(i);
      for (std::size_t d = 0; d < y.dim(); ++d) overall[d] += r[d];
    }
    for (auto& v : overall) v /= static_cast<double>(n);
    double between = 0.0;
    for (std::size_t q = 0; q < c; ++q) {
      between += counts[q] * squared_distance(centroids[q], overall);
    }
    double within = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      within += squared_distance(y.row(i), centroids[static_cast<std::size_t>(cls[i])]);
    }
    if (within == 0.0) return 1.0;
    return between * static_cast<double>(n - c) / (within * static_cast<double>(c - 1));
  }

  // Davies-Bouldin.
  std::vector<double> scatter(c, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto q = static_cast<std::size_t>(cls[i]);
    scatter[q] += std::sqrt(squared_distance(y.row(i), centroids[q]));
  }
  for (std::size_t q = 0; q < c; ++q) scatter[q] /= counts[q];
  double total = 0.0;
  for (std::size_t a = 0; a < c; ++a) {
    double worst = 0.0;
    for (std::size_t b = 0; b < c; ++b) {
      if (a == b) continue;
      const double sep = std::sqrt(squared_distance(centroids[a], centroids[b]));
      const double spread = scatter[a] + scatter[b];
      if (sep == 0.0) {
        if (spread == 0.0) continue;
        throw DegenerateInputError("Davies-Bouldin: classes " +
                                   std::to_string(labels.classes()[a]) + " and " +
                                   std::to_string(labels.classes()[b]) +
                                   " share a centroid");
      }
      worst = std::max(worst, spread / sep);
    }
    total += worst;
  }
  return total / static_cast<double>(c);
}

double clustering_validation(const PointMatrix& y, const LabelVector& labels,
                             ExternalIndex index, std::size_t n_clusters,
                             std::uint64_t seed) {
  const auto n = y.n_points();
  require_labels(labels, n, true);
  const auto clusters = n_clusters == 0 ? labels.n_classes() : n_clusters;
  if (clusters < 2) throw ParamError("cvm needs n_clusters >= 2");

  std::vector<Index> everyone(n);
  for (std::size_t i = 0; i < n; ++i) everyone[i] = static_cast<Index>(i);
  Rng rng(seed);
  const auto assignment = kmeans(y, everyone, clusters, rng);
  const std::vector<Index> truth(labels.class_index().begin(), labels.class_index().end());
  return index == ExternalIndex::Ari ? adjusted_rand_index(assignment, truth)
                                     : normalized_mutual_information(assignment, truth);
}

}  // namespace drdist::measures
