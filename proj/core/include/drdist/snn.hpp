#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "drdist/preprocess.hpp"

namespace drdist {

/// Sparse shared-nearest-neighbour similarity graph.
///
/// S(i, j) = sum over m in kNN(i) ∩ kNN(j) of (k + 1 - rank_i(m)) * (k + 1 - rank_j(m)),
/// where rank_i(m) is m's 1-based position in i's kNN list. Only pairs with
/// S > 0 are stored; each row is sorted by column. Entries are integers held
/// exactly in doubles, so the graph is symmetric bit for bit.
class SnnGraph {
 public:
  struct Edge {
    Index target;
    double weight;
  };

  SnnGraph(const KnnTable& knn, std::size_t k);

  std::size_t size() const noexcept { return rows_.size(); }
  std::size_t k() const noexcept { return k_; }
  std::span<const Edge> row(std::size_t i) const noexcept { return rows_[i]; }

  /// Raw similarity; 0 for pairs outside the graph and on the diagonal.
  double similarity(std::size_t i, std::size_t j) const noexcept;
  /// Largest off-diagonal similarity (0 if the graph is empty).
  double max_similarity() const noexcept { return max_; }
  /// similarity / max_similarity, or 0 when the graph is empty.
  double normalized(std::size_t i, std::size_t j) const noexcept {
    return max_ > 0.0 ? similarity(i, j) / max_ : 0.0;
  }

 private:
  std::size_t k_;
  std::vector<std::vector<Edge>> rows_;
  double max_ = 0.0;
};

}  // namespace drdist
