#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "drdist/errors.hpp"
#include "drdist/measures.hpp"
#include "drdist/parallel.hpp"

namespace drdist::measures {

namespace {

void require_same_size(const DistanceMatrix& a, const DistanceMatrix& b) {
  if (a.size() != b.size()) throw ShapeError("distance matrices differ in N");
}

std::vector<double> upper_triangle(const DistanceMatrix& d) {
  const auto n = d.size();
  std::vector<double> out;
  out.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) out.push_back(d(i, j));
  }
  return out;
}

double correlation(const std::vector<double>& a, const std::vector<double>& b,
                   const char* what) {
  const double count = static_cast<double>(a.size());
  const double mean_a = std::accumulate(a.begin(), a.end(), 0.0) / count;
  const double mean_b = std::accumulate(b.begin(), b.end(), 0.0) / count;
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    const double da = a[t] - mean_a;
    const double db = b[t] - mean_b;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) {
    throw DegenerateInputError(std::string(what) +
                               ": pairwise distances have zero variance");
  }
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

// Ranks 1..n with ties sharing their average rank.
std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t end = start + 1;
    while (end < order.size() && v[order[end]] == v[order[start]]) ++end;
    const double avg = (static_cast<double>(start + 1) + static_cast<double>(end)) / 2.0;
    for (std::size_t t = start; t < end; ++t) ranks[order[t]] = avg;
    start = end;
  }
  return ranks;
}

}  // namespace

double stress(const DistanceMatrix& dist_high, const DistanceMatrix& dist_low) {
  require_same_size(dist_high, dist_low);
  const auto n = dist_high.size();
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double diff = dist_high(i, j) - dist_low(i, j);
      num += diff * diff;
      den += dist_high(i, j) * dist_high(i, j);
    }
  }
  if (den == 0.0) throw DegenerateInputError("stress: all high-space points coincide");
  return std::sqrt(num / den);
}

std::vector<double> kernel_density(const DistanceMatrix& d, double sigma) {
  if (!(sigma > 0.0)) throw ParamError("sigma must be positive");
  const auto n = d.size();
  double max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (double v : d.row(i)) max = std::max(max, v);
  }
  if (max == 0.0) throw DegenerateInputError("kernel density: all points coincide");

  const double scale = 1.0 / (max * max * sigma * sigma);
  std::vector<double> density(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    double s = 0.0;
    const auto row = d.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) s += std::exp(-row[j] * row[j] * scale);
    }
    density[i] = s;
  });
  const double total = std::accumulate(density.begin(), density.end(), 0.0);
  if (total == 0.0) throw DegenerateInputError("kernel density underflowed; increase sigma");
  for (auto& v : density) v /= total;
  return density;
}

double kl_divergence(const DistanceMatrix& dist_high, const DistanceMatrix& dist_low,
                     double sigma) {
  require_same_size(dist_high, dist_low);
  const auto p = kernel_density(dist_high, sigma);
  const auto q = kernel_density(dist_low, sigma);
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) {
      throw DegenerateInputError("kl_div: embedding density vanishes at point " +
                                 std::to_string(i));
    }
    kl += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(0.0, kl);
}

double distance_to_measure(const DistanceMatrix& dist_high,
                           const DistanceMatrix& dist_low, double sigma) {
  require_same_size(dist_high, dist_low);
  const auto p = kernel_density(dist_high, sigma);
  const auto q = kernel_density(dist_low, sigma);
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += (p[i] - q[i]) * (p[i] - q[i]);
  return std::sqrt(s);
}

double topographic_product(const DistanceMatrix& dist_high,
                           const DistanceMatrix& dist_low,
                           const RankMatrix& rank_high, const RankMatrix& rank_low,
                           std::size_t max_k) {
  require_same_size(dist_high, dist_low);
  const auto n = dist_high.size();
  const std::size_t orders = max_k == 0 ? n - 1 : max_k;
  if (orders > n - 1) {
    throw ParamError("topo max_k = " + std::to_string(max_k) + " exceeds N-1");
  }

  std::vector<double> per_point(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    std::vector<std::size_t> by_high(n - 1);
    std::vector<std::size_t> by_low(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      by_high[static_cast<std::size_t>(rank_high(i, j)) - 1] = j;
      by_low[static_cast<std::size_t>(rank_low(i, j)) - 1] = j;
    }
    double log_prefix = 0.0;
    double acc = 0.0;
    for (std::size_t k = 1; k <= orders; ++k) {
      const auto nh = by_high[k - 1];
      const auto nl = by_low[k - 1];
      const double q1_num = dist_high(i, nl);
      const double q1_den = dist_high(i, nh);
      const double q2_num = dist_low(i, nl);
      const double q2_den = dist_low(i, nh);
      if (q1_num == 0.0 || q1_den == 0.0 || q2_num == 0.0 || q2_den == 0.0) {
        throw DegenerateInputError(
            "topographic product: zero distance between point " + std::to_string(i) +
            " and neighbour " + std::to_string(q1_den == 0.0 || q2_den == 0.0 ? nh : nl) +
            " (duplicate points)");
      }
      log_prefix += std::log(q1_num / q1_den) + std::log(q2_num / q2_den);
      acc += log_prefix / (2.0 * static_cast<double>(k));
    }
    per_point[i] = acc;
  });
  const double total = std::accumulate(per_point.begin(), per_point.end(), 0.0);
  return total / (static_cast<double>(n) * static_cast<double>(orders));
}

double pearson_r(const DistanceMatrix& dist_high, const DistanceMatrix& dist_low) {
  require_same_size(dist_high, dist_low);
  return correlation(upper_triangle(dist_high), upper_triangle(dist_low), "pearson_r");
}

double spearman_rho(const DistanceMatrix& dist_high, const DistanceMatrix& dist_low) {
  require_same_size(dist_high, dist_low);
  return correlation(average_ranks(upper_triangle(dist_high)),
                     average_ranks(upper_triangle(dist_low)), "spearman_rho");
}

}  // namespace drdist::measures
