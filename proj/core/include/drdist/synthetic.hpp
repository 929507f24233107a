#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "drdist/matrix.hpp"

namespace drdist {

struct BlobOptions {
  std::size_t n_points = 1000;
  std::size_t dim = 50;
  std::size_t n_centers = 5;
  double center_spread = 10.0;  // stddev of centre coordinates
  double cluster_std = 1.0;
  std::uint64_t seed = 42;
};

/// Isotropic Gaussian blobs; point i belongs to blob i % n_centers.
std::pair<PointMatrix, LabelVector> make_blobs(const BlobOptions& options);

/// Standard normal draws from the library's portable generator.
PointMatrix gaussian_matrix(std::size_t n_points, std::size_t dim, std::uint64_t seed);

/// Random Gaussian projection of x to `dim` dimensions plus Gaussian jitter
/// of `jitter` times the projected per-axis standard deviation.
PointMatrix random_projection(const PointMatrix& x, std::size_t dim, std::uint64_t seed,
                              double jitter = 0.05);

}  // namespace drdist
