#include "drdist/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "drdist/clustering.hpp"
#include "drdist/errors.hpp"

namespace drdist {

namespace {

// Box-Muller on the portable uniform stream.
class Normal {
 public:
  explicit Normal(std::uint64_t seed) : rng_(seed) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    while (u == 0.0) u = rng_.uniform();
    const double v = rng_.uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(2.0 * std::numbers::pi * v);
    has_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * v);
  }

 private:
  Rng rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace

std::pair<PointMatrix, LabelVector> make_blobs(const BlobOptions& o) {
  if (o.n_centers < 1) throw ParamError("make_blobs needs at least one centre");
  Normal normal(o.seed);
  std::vector<double> centers(o.n_centers * o.dim);
  for (auto& c : centers) c = o.center_spread * normal();
  std::vector<double> data(o.n_points * o.dim);
  std::vector<std::int64_t> labels(o.n_points);
  for (std::size_t i = 0; i < o.n_points; ++i) {
    const auto c = i % o.n_centers;
    labels[i] = static_cast<std::int64_t>(c);
    for (std::size_t d = 0; d < o.dim; ++d) {
      data[i * o.dim + d] = centers[c * o.dim + d] + o.cluster_std * normal();
    }
  }
  return {PointMatrix(o.n_points, o.dim, std::move(data)), LabelVector(std::move(labels))};
}

PointMatrix gaussian_matrix(std::size_t n_points, std::size_t dim, std::uint64_t seed) {
  Normal normal(seed);
  std::vector<double> data(n_points * dim);
  for (auto& v : data) v = normal();
  return PointMatrix(n_points, dim, std::move(data));
}

PointMatrix random_projection(const PointMatrix& x, std::size_t dim, std::uint64_t seed,
                              double jitter) {
  if (dim < 1) throw ParamError("projection dimension must be >= 1");
  if (!(jitter >= 0.0)) throw ParamError("jitter must be non-negative");
  Normal normal(seed);
  const auto n = x.n_points();
  const auto big = x.dim();
  std::vector<double> proj(big * dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(big));
  for (auto& p : proj) p = normal() * scale;

  std::vector<double> out(n * dim, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = x.row(i);
    for (std::size_t a = 0; a < big; ++a) {
      for (std::size_t b = 0; b < dim; ++b) out[i * dim + b] += row[a] * proj[a * dim + b];
    }
  }
  for (std::size_t b = 0; b < dim; ++b) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += out[i * dim + b];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) var += (out[i * dim + b] - mean) * (out[i * dim + b] - mean);
    const double sd = std::sqrt(var / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) out[i * dim + b] += jitter * sd * normal();
  }
  return PointMatrix(n, dim, std::move(out));
}

}  // namespace drdist
