#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "drdist/errors.hpp"
#include "drdist/measures.hpp"
#include "drdist/parallel.hpp"
#include "drdist/snn.hpp"

namespace drdist::measures {

namespace {

void require_k(std::size_t k, std::size_t n, const KnnTable& knn) {
  if (k < 1 || k >= n) {
    throw ParamError("k = " + std::to_string(k) + " must satisfy 1 <= k <= N-1 = " +
                     std::to_string(n - 1));
  }
  if (knn.k() < k || knn.size() != n) {
    throw ConfigError("kNN table does not cover k = " + std::to_string(k));
  }
}

void require_tnc_k(std::size_t k, std::size_t n) {
  if (k < 1 || 2 * k >= n) {
    throw ParamError("k = " + std::to_string(k) +
                     " must satisfy 1 <= k < N/2 (N = " + std::to_string(n) + ")");
  }
}

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

// Rank-excess penalty of each point: sum over its `base` neighbours j of
// max(0, other_rank(i, j) - k), optionally only for cross-class neighbours.
std::vector<double> rank_penalty(const KnnTable& base, const RankMatrix& other_rank,
                                 std::size_t k, const LabelVector* labels) {
  const auto n = base.size();
  std::vector<double> penalty(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double p = 0.0;
    for (const auto j : base.neighbors(i, k)) {
      const auto ju = static_cast<std::size_t>(j);
      if (labels && (*labels)[ju] == (*labels)[i]) continue;
      const auto r = static_cast<std::size_t>(other_rank(i, ju));
      if (r > k) p += static_cast<double>(r - k);
    }
    penalty[i] = p;
  }
  return penalty;
}

PairScores tnc_impl(const RankMatrix& rank_high, const RankMatrix& rank_low,
                    const KnnTable& knn_high, const KnnTable& knn_low, std::size_t k,
                    const LabelVector* labels) {
  const auto n = rank_high.size();
  require_tnc_k(k, n);
  require_k(k, n, knn_high);
  require_k(k, n, knn_low);

  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  const double per_point = 2.0 / (kd * (2.0 * nd - 3.0 * kd - 1.0));
  const double global = per_point / nd;

  // False neighbours (in the embedding only) are ranked in the data space.
  const auto false_pen = rank_penalty(knn_low, rank_high, k, labels);
  const auto missing_pen = rank_penalty(knn_high, rank_low, k, labels);

  PairScores out;
  out.first = 1.0 - global * sum(false_pen);
  out.second = 1.0 - global * sum(missing_pen);
  out.local_first.resize(n);
  out.local_second.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.local_first[i] = 1.0 - per_point * false_pen[i];
    out.local_second[i] = 1.0 - per_point * missing_pen[i];
  }
  return out;
}

}  // namespace

PairScores trustworthiness_continuity(const RankMatrix& rank_high,
                                      const RankMatrix& rank_low,
                                      const KnnTable& knn_high,
                                      const KnnTable& knn_low, std::size_t k) {
  return tnc_impl(rank_high, rank_low, knn_high, knn_low, k, nullptr);
}

PairScores class_aware_trustworthiness_continuity(const RankMatrix& rank_high,
                                                  const RankMatrix& rank_low,
                                                  const KnnTable& knn_high,
                                                  const KnnTable& knn_low,
                                                  std::size_t k,
                                                  const LabelVector& labels) {
  if (labels.size() != rank_high.size()) {
    throw ShapeError("labels length does not match N");
  }
  return tnc_impl(rank_high, rank_low, knn_high, knn_low, k, &labels);
}

PairScores mean_relative_rank_errors(const RankMatrix& rank_high,
                                     const RankMatrix& rank_low,
                                     const KnnTable& knn_high,
                                     const KnnTable& knn_low, std::size_t k) {
  const auto n = rank_high.size();
  require_k(k, n, knn_high);
  require_k(k, n, knn_low);

  // Worst-case error mass of one point.
  double bound = 0.0;
  for (std::size_t l = 1; l <= k; ++l) {
    bound += std::abs(static_cast<double>(n) - 2.0 * static_cast<double>(l) + 1.0) /
             static_cast<double>(l);
  }

  PairScores out;
  out.local_first.resize(n);
  out.local_second.resize(n);
  double total_false = 0.0;
  double total_missing = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double e_false = 0.0;
    for (const auto j : knn_low.neighbors(i, k)) {
      const auto rh = static_cast<double>(rank_high(i, static_cast<std::size_t>(j)));
      const auto rl = static_cast<double>(rank_low(i, static_cast<std::size_t>(j)));
      e_false += std::abs(rh - rl) / rl;
    }
    double e_missing = 0.0;
    for (const auto j : knn_high.neighbors(i, k)) {
      const auto rh = static_cast<double>(rank_high(i, static_cast<std::size_t>(j)));
      const auto rl = static_cast<double>(rank_low(i, static_cast<std::size_t>(j)));
      e_missing += std::abs(rh - rl) / rh;
    }
    total_false += e_false;
    total_missing += e_missing;
    out.local_first[i] = 1.0 - e_false / bound;
    out.local_second[i] = 1.0 - e_missing / bound;
  }
  const double norm = static_cast<double>(n) * bound;
  out.first = 1.0 - total_false / norm;
  out.second = 1.0 - total_missing / norm;
  return out;
}

SingleScore local_continuity_meta_criterion(const KnnTable& knn_high,
                                            const KnnTable& knn_low, std::size_t k) {
  const auto n = knn_high.size();
  require_k(k, n, knn_high);
  require_k(k, n, knn_low);

  const double baseline = static_cast<double>(k) / static_cast<double>(n - 1);
  std::vector<char> mark(n, 0);
  SingleScore out;
  out.local.resize(n);
  double overlap_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto j : knn_high.neighbors(i, k)) mark[static_cast<std::size_t>(j)] = 1;
    std::size_t overlap = 0;
    for (const auto j : knn_low.neighbors(i, k)) overlap += mark[static_cast<std::size_t>(j)];
    for (const auto j : knn_high.neighbors(i, k)) mark[static_cast<std::size_t>(j)] = 0;
    overlap_total += static_cast<double>(overlap);
    out.local[i] = static_cast<double>(overlap) / static_cast<double>(k) - baseline;
  }
  out.value = overlap_total / (static_cast<double>(n) * static_cast<double>(k)) - baseline;
  return out;
}

SingleScore neighborhood_hit(const KnnTable& knn_low, std::size_t k,
                             const LabelVector& labels) {
  const auto n = knn_low.size();
  require_k(k, n, knn_low);
  if (labels.size() != n) throw ShapeError("labels length does not match N");

  SingleScore out;
  out.local.resize(n);
  double hits_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t hits = 0;
    for (const auto j : knn_low.neighbors(i, k)) {
      if (labels[static_cast<std::size_t>(j)] == labels[i]) ++hits;
    }
    hits_total += static_cast<double>(hits);
    out.local[i] = static_cast<double>(hits) / static_cast<double>(k);
  }
  out.value = hits_total / (static_cast<double>(n) * static_cast<double>(k));
  return out;
}

double neighbor_dissimilarity(const KnnTable& knn_high, const KnnTable& knn_low,
                              std::size_t k) {
  const auto n = knn_high.size();
  require_k(k, n, knn_high);
  require_k(k, n, knn_low);

  const SnnGraph high(knn_high, k);
  const SnnGraph low(knn_low, k);
  const double max_h = high.max_similarity();
  const double max_l = low.max_similarity();
  auto norm = [](double w, double max) { return max > 0.0 ? w / max : 0.0; };

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // Merge the two sorted rows over columns j > i.
    const auto rh = high.row(i);
    const auto rl = low.row(i);
    std::size_t a = 0;
    std::size_t b = 0;
    while (a < rh.size() && static_cast<std::size_t>(rh[a].target) <= i) ++a;
    while (b < rl.size() && static_cast<std::size_t>(rl[b].target) <= i) ++b;
    while (a < rh.size() || b < rl.size()) {
      if (b == rl.size() || (a < rh.size() && rh[a].target < rl[b].target)) {
        total += norm(rh[a].weight, max_h);
        ++a;
      } else if (a == rh.size() || rl[b].target < rh[a].target) {
        total += norm(rl[b].weight, max_l);
        ++b;
      } else {
        total += std::abs(norm(rh[a].weight, max_h) - norm(rl[b].weight, max_l));
        ++a;
        ++b;
      }
    }
  }
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return total / pairs;
}

double procrustes(const PointMatrix& x, const PointMatrix& y,
                  const KnnTable& knn_high, std::size_t k) {
  const auto n = x.n_points();
  if (y.n_points() != n) throw ShapeError("high and low matrices differ in N");
  if (k < 2) throw ParamError("procrustes needs k >= 2");
  require_k(k, n, knn_high);

  const auto big_d = static_cast<Eigen::Index>(x.dim());
  const auto small_d = static_cast<Eigen::Index>(y.dim());
  const auto m = static_cast<Eigen::Index>(k + 1);

  std::vector<double> residual(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    Eigen::MatrixXd xs(m, big_d);
    Eigen::MatrixXd ys(m, small_d);
    auto fill = [&](Eigen::Index r, std::size_t p) {
      const auto xr = x.row(p);
      const auto yr = y.row(p);
      for (Eigen::Index c = 0; c < big_d; ++c) xs(r, c) = xr[static_cast<std::size_t>(c)];
      for (Eigen::Index c = 0; c < small_d; ++c) ys(r, c) = yr[static_cast<std::size_t>(c)];
    };
    fill(0, i);
    const auto nbrs = knn_high.neighbors(i, k);
    for (std::size_t t = 0; t < k; ++t) {
      fill(static_cast<Eigen::Index>(t + 1), static_cast<std::size_t>(nbrs[t]));
    }
    xs.rowwise() -= xs.colwise().mean();
    ys.rowwise() -= ys.colwise().mean();
    const double xx = xs.squaredNorm();
    const double yy = ys.squaredNorm();
    if (xx == 0.0) return;  // zero-variance neighbourhood
    if (yy == 0.0) {
      residual[i] = 1.0;
      return;
    }
    const Eigen::MatrixXd cross = ys.transpose() * xs;
    const double trace_norm = Eigen::JacobiSVD<Eigen::MatrixXd>(cross).singularValues().sum();
    residual[i] = std::max(0.0, 1.0 - trace_norm * trace_norm / (xx * yy));
  });
  return sum(residual) / static_cast<double>(n);
}

}  // namespace drdist::measures
