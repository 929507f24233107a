#include "drdist/snn.hpp"

#include <algorithm>

#include "drdist/errors.hpp"

namespace drdist {

SnnGraph::SnnGraph(const KnnTable& knn, std::size_t k) : k_(k), rows_(knn.size()) {
  const auto n = knn.size();
  if (k < 1 || k > knn.k()) {
    throw ParamError("SNN graph needs 1 <= k <= " + std::to_string(knn.k()));
  }

  // owners[m] = points whose kNN list holds m, with m's weight in that list.
  std::vector<std::vector<std::pair<Index, double>>> owners(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto nbrs = knn.neighbors(i, k);
    for (std::size_t pos = 0; pos < k; ++pos) {
      owners[static_cast<std::size_t>(nbrs[pos])].emplace_back(
          static_cast<Index>(i), static_cast<double>(k - pos));
    }
  }

  std::vector<double> scratch(n, 0.0);
  std::vector<Index> touched;
  for (std::size_t i = 0; i < n; ++i) {
    touched.clear();
    const auto nbrs = knn.neighbors(i, k);
    for (std::size_t pos = 0; pos < k; ++pos) {
      const double wi = static_cast<double>(k - pos);
      for (const auto& [j, wj] : owners[static_cast<std::size_t>(nbrs[pos])]) {
        if (static_cast<std::size_t>(j) == i) continue;
        if (scratch[static_cast<std::size_t>(j)] == 0.0) touched.push_back(j);
        scratch[static_cast<std::size_t>(j)] += wi * wj;
      }
    }
    std::sort(touched.begin(), touched.end());
    auto& row = rows_[i];
    row.reserve(touched.size());
    for (auto j : touched) {
      const double w = scratch[static_cast<std::size_t>(j)];
      row.push_back({j, w});
      max_ = std::max(max_, w);
      scratch[static_cast<std::size_t>(j)] = 0.0;
    }
  }
}

double SnnGraph::similarity(std::size_t i, std::size_t j) const noexcept {
  const auto& row = rows_[i];
  const auto target = static_cast<Index>(j);
  const auto it = std::lower_bound(row.begin(), row.end(), target,
                                   [](const Edge& e, Index t) { return e.target < t; });
  return (it != row.end() && it->target == target) ? it->weight : 0.0;
}

}  // namespace drdist
