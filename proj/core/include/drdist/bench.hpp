#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "drdist/matrix.hpp"
#include "drdist/preprocess.hpp"
#include "drdist/spec.hpp"

namespace drdist {

struct BenchOptions {
  std::size_t repetitions = 5;
  std::uint64_t seed = 42;
  Metric metric = Metric::Euclidean;
  double jitter = 0.05;
};

struct BenchReport {
  std::size_t n_points = 0;
  std::size_t dim = 0;
  std::vector<double> optimized_seconds;
  std::vector<double> naive_seconds;
  double mean_optimized = 0.0;
  double mean_naive = 0.0;
  double speedup = 0.0;  // mean_naive / mean_optimized
};

/// Each repetition perturbs a fresh 2-D embedding of x (random projection
/// plus jitter, seeded by seed + rep), then times the measure list once through an
/// Engine built from scratch and once as independent standalone calls.
/// Throws ParamError when repetitions < 1.
BenchReport run_benchmark(const MeasureSpec& spec, const PointMatrix& x,
                          const LabelVector* labels, const BenchOptions& options = {});

}  // namespace drdist
