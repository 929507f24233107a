#include "drdist/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <tuple>

#include "drdist/errors.hpp"

namespace drdist {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const double diff = a[c] - b[c];
    sum += diff * diff;
  }
  return sum;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

double lambda_of(double weight) { return 1.0 / std::max(weight, 1e-12); }

}  // namespace

std::vector<Index> canonical_labels(std::span<const Index> ids) {
  std::map<Index, Index> remap;
  std::vector<Index> out;
  out.reserve(ids.size());
  for (auto id : ids) {
    const auto [it, inserted] = remap.emplace(id, static_cast<Index>(remap.size()));
    out.push_back(it->second);
  }
  return out;
}

std::vector<Index> kmeans(const PointMatrix& points, std::span<const Index> members,
                          std::size_t n_clusters, Rng& rng,
                          const KMeansOptions& options) {
  const auto m = members.size();
  if (m == 0) return {};
  if (n_clusters < 1) throw ParamError("k-means needs at least one cluster");
  const auto c = std::min(n_clusters, m);
  const auto dim = points.dim();
  auto row = [&](std::size_t p) {
    return points.row(static_cast<std::size_t>(members[p]));
  };

  // D^2 seeding.
  std::vector<double> centers;
  centers.reserve(c * dim);
  auto add_center = [&](std::size_t p) {
    const auto r = row(p);
    centers.insert(centers.end(), r.begin(), r.end());
  };
  add_center(rng.below(m));
  std::vector<double> nearest(m, std::numeric_limits<double>::infinity());
  while (centers.size() < c * dim) {
    const std::span<const double> last(centers.data() + centers.size() - dim, dim);
    double total = 0.0;
    for (std::size_t p = 0; p < m; ++p) {
      nearest[p] = std::min(nearest[p], squared_distance(row(p), last));
      total += nearest[p];
    }
    if (total <= 0.0) {
      add_center(rng.below(m));
      continue;
    }
    const double target = rng.uniform() * total;
    double cumulative = 0.0;
    std::size_t chosen = m;
    std::size_t last_positive = 0;
    for (std::size_t p = 0; p < m; ++p) {
      if (nearest[p] > 0.0) last_positive = p;
      cumulative += nearest[p];
      if (cumulative > target) {
        chosen = p;
        break;
      }
    }
    add_center(chosen < m ? chosen : last_positive);
  }

  std::vector<Index> assignment(m, 0);
  std::vector<double> sums(c * dim);
  std::vector<std::size_t> counts(c);
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    double inertia = 0.0;
    for (std::size_t p = 0; p < m; ++p) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_c = 0;
      for (std::size_t q = 0; q < c; ++q) {
        const double d2 =
            squared_distance(row(p), std::span<const double>(centers.data() + q * dim, dim));
        if (d2 < best) {
          best = d2;
          best_c = q;
        }
      }
      assignment[p] = static_cast<Index>(best_c);
      inertia += best;
    }
    if (inertia == 0.0 ||
        (std::isfinite(previous) &&
         std::abs(previous - inertia) <= options.relative_tolerance * previous)) {
      break;
    }
    previous = inertia;

    std::fill(sums.begin(), sums.end(), 0.0);
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t p = 0; p < m; ++p) {
      const auto q = static_cast<std::size_t>(assignment[p]);
      const auto r = row(p);
      for (std::size_t d = 0; d < dim; ++d) sums[q * dim + d] += r[d];
      ++counts[q];
    }
    for (std::size_t q = 0; q < c; ++q) {
      if (counts[q] == 0) continue;  // empty cluster keeps its centre
      for (std::size_t d = 0; d < dim; ++d) {
        centers[q * dim + d] = sums[q * dim + d] / static_cast<double>(counts[q]);
      }
    }
  }
  return canonical_labels(assignment);
}

std::vector<Index> density_partition(const DistanceMatrix& distances,
                                     std::span<const Index> members,
                                     std::size_t min_cluster_size) {
  const auto m = members.size();
  const auto mcs = std::max<std::size_t>(min_cluster_size, 2);
  if (m < 2 * mcs) return std::vector<Index>(m, 0);

  auto dist = [&](std::size_t a, std::size_t b) {
    return distances(static_cast<std::size_t>(members[a]),
                     static_cast<std::size_t>(members[b]));
  };

  // Core distance: distance to the mcs-th nearest other member.
  std::vector<double> core(m);
  {
    std::vector<double> row(m - 1);
    const auto kth = std::min(mcs, m - 1) - 1;
    for (std::size_t a = 0; a < m; ++a) {
      std::size_t t = 0;
      for (std::size_t b = 0; b < m; ++b) {
        if (b != a) row[t++] = dist(a, b);
      }
      std::nth_element(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(kth), row.end());
      core[a] = row[kth];
    }
  }
  auto reach = [&](std::size_t a, std::size_t b) {
    return std::max({core[a], core[b], dist(a, b)});
  };

  // Candidate merges in (weight, lo, hi) order; Kruskal keeps those joining
  // two components, which fixes the merge order under tied weights.
  struct MstEdge {
    double weight;
    std::size_t lo;
    std::size_t hi;
  };
  std::vector<MstEdge> edges;
  edges.reserve(m * (m - 1) / 2);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) edges.push_back({reach(a, b), a, b});
  }
  std::sort(edges.begin(), edges.end(), [](const MstEdge& a, const MstEdge& b) {
    return std::tie(a.weight, a.lo, a.hi) < std::tie(b.weight, b.lo, b.hi);
  });

  // Single-linkage tree: leaves 0..m-1, merge t becomes node m+t.
  struct Node {
    std::size_t left = 0;
    std::size_t right = 0;
    std::size_t size = 1;
    double weight = 0.0;
  };
  std::vector<Node> nodes(m);
  {
    DisjointSets sets(m);
    std::vector<std::size_t> top(m);
    std::iota(top.begin(), top.end(), std::size_t{0});
    for (const auto& e : edges) {
      const auto ra = sets.find(e.lo);
      const auto rb = sets.find(e.hi);
      if (ra == rb) continue;
      Node node;
      node.left = top[ra];
      node.right = top[rb];
      node.size = nodes[node.left].size + nodes[node.right].size;
      node.weight = e.weight;
      nodes.push_back(node);
      sets.unite(ra, rb);
      top[sets.find(ra)] = nodes.size() - 1;
    }
  }

  // Condensed tree.
  struct Cluster {
    std::size_t parent = 0;
    double birth = 0.0;
    double stability = 0.0;
    std::vector<std::size_t> children;
  };
  std::vector<Cluster> clusters(1);
  std::vector<std::size_t> fell_from(m, 0);

  auto drop_leaves = [&](std::size_t node, std::size_t cluster) {
    std::vector<std::size_t> stack{node};
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      if (v < m) {
        fell_from[v] = cluster;
      } else {
        stack.push_back(nodes[v].left);
        stack.push_back(nodes[v].right);
      }
    }
  };

  std::vector<std::pair<std::size_t, std::size_t>> work{{nodes.size() - 1, 0}};
  while (!work.empty()) {
    auto [node, cluster] = work.back();
    work.pop_back();
    while (true) {
      if (node < m) {
        // A lone leaf cannot outlive a split when mcs >= 2; kept for safety.
        fell_from[node] = cluster;
        break;
      }
      const auto& nd = nodes[node];
      const double lambda = lambda_of(nd.weight);
      const double gain = lambda - clusters[cluster].birth;
      const auto sl = nodes[nd.left].size;
      const auto sr = nodes[nd.right].size;
      if (sl >= mcs && sr >= mcs) {
        clusters[cluster].stability += static_cast<double>(sl + sr) * gain;
        for (const auto child : {nd.left, nd.right}) {
          Cluster c;
          c.parent = cluster;
          c.birth = lambda;
          clusters.push_back(c);
          clusters[cluster].children.push_back(clusters.size() - 1);
          work.emplace_back(child, clusters.size() - 1);
        }
        break;
      }
      if (sl < mcs && sr < mcs) {
        clusters[cluster].stability += static_cast<double>(sl + sr) * gain;
        drop_leaves(nd.left, cluster);
        drop_leaves(nd.right, cluster);
        break;
      }
      const auto small = sl < mcs ? nd.left : nd.right;
      const auto big = sl < mcs ? nd.right : nd.left;
      clusters[cluster].stability += static_cast<double>(nodes[small].size) * gain;
      drop_leaves(small, cluster);
      node = big;
    }
  }

  // Excess-of-mass selection; children always have larger ids than parents.
  std::vector<double> subtree(clusters.size(), 0.0);
  std::vector<bool> selected(clusters.size(), false);
  for (std::size_t c = clusters.size(); c-- > 1;) {
    double child_sum = 0.0;
    for (auto ch : clusters[c].children) child_sum += subtree[ch];
    if (clusters[c].children.empty() || clusters[c].stability >= child_sum) {
      selected[c] = true;
      subtree[c] = clusters[c].stability;
    } else {
      subtree[c] = child_sum;
    }
  }
  // Keep only the top-most selected cluster on every root path.
  std::vector<Index> final_label(clusters.size(), -1);
  for (std::size_t c = 1; c < clusters.size(); ++c) {
    const auto p = clusters[c].parent;
    if (final_label[p] >= 0) {
      final_label[c] = final_label[p];
    } else if (selected[c]) {
      final_label[c] = static_cast<Index>(c);
    }
  }

  std::vector<Index> part(m, -1);
  bool any = false;
  for (std::size_t p = 0; p < m; ++p) {
    part[p] = final_label[fell_from[p]];
    any = any || part[p] >= 0;
  }
  if (!any) return std::vector<Index>(m, 0);

  std::vector<Index> resolved = part;
  for (std::size_t p = 0; p < m; ++p) {
    if (part[p] >= 0) continue;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t q = 0; q < m; ++q) {
      if (part[q] < 0) continue;
      const double d = dist(p, q);
      if (d < best) {
        best = d;
        resolved[p] = part[q];
      }
    }
  }
  return canonical_labels(resolved);
}

namespace {

struct Contingency {
  std::map<std::pair<Index, Index>, double> cells;
  std::map<Index, double> rows;
  std::map<Index, double> cols;
  double n = 0.0;
};

Contingency contingency(std::span<const Index> a, std::span<const Index> b) {
  if (a.size() != b.size()) throw ShapeError("partitions differ in length");
  Contingency t;
  for (std::size_t i = 0; i < a.size(); ++i) {
    t.cells[{a[i], b[i]}] += 1.0;
    t.rows[a[i]] += 1.0;
    t.cols[b[i]] += 1.0;
  }
  t.n = static_cast<double>(a.size());
  return t;
}

double pairs(double v) { return v * (v - 1.0) / 2.0; }

}  // namespace

double adjusted_rand_index(std::span<const Index> a, std::span<const Index> b) {
  const auto t = contingency(a, b);
  double index = 0.0;
  for (const auto& [_, v] : t.cells) index += pairs(v);
  double sum_rows = 0.0;
  for (const auto& [_, v] : t.rows) sum_rows += pairs(v);
  double sum_cols = 0.0;
  for (const auto& [_, v] : t.cols) sum_cols += pairs(v);
  const double expected = sum_rows * sum_cols / pairs(t.n);
  const double max_index = 0.5 * (sum_rows + sum_cols);
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

double normalized_mutual_information(std::span<const Index> a, std::span<const Index> b) {
  const auto t = contingency(a, b);
  auto entropy = [&](const std::map<Index, double>& marginal) {
    double h = 0.0;
    for (const auto& [_, v] : marginal) h -= (v / t.n) * std::log(v / t.n);
    return h;
  };
  const double ha = entropy(t.rows);
  const double hb = entropy(t.cols);
  if (ha == 0.0 && hb == 0.0) return 1.0;
  double mi = 0.0;
  for (const auto& [key, v] : t.cells) {
    const double pa = t.rows.at(key.first) / t.n;
    const double pb = t.cols.at(key.second) / t.n;
    const double pab = v / t.n;
    mi += pab * std::log(pab / (pa * pb));
  }
  return std::max(0.0, mi) / (0.5 * (ha + hb));
}

}  // namespace drdist
