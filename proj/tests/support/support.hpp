#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "drdist/matrix.hpp"
#include "drdist/params.hpp"
#include "oracles.hpp"

namespace support {

struct Instance {
  oracle::Rows x;
  oracle::Rows y;
  oracle::Labels labels;
};

/// Gaussian X (N x dim_high) with class-shifted means, and a noisy linear
/// image of X as Y (N x dim_low). Labels cycle so every class is present.
Instance random_instance(std::mt19937_64& gen, int n, int dim_high, int dim_low,
                         int n_classes);

drdist::PointMatrix to_matrix(const oracle::Rows& rows);
drdist::LabelVector to_labels(const oracle::Labels& labels);
oracle::Rows to_rows(const drdist::PointMatrix& m);

/// |a - b| <= tol * max(|a|, |b|), with a 1e-14 absolute floor for scores
/// that are zero up to rounding.
bool rel_close(double a, double b, double tol);

struct Check {
  std::string what;
  double lib = 0.0;
  double ref = 0.0;
};

/// Admissible random parameters for `id` on N points.
drdist::ParamMap random_params(const std::string& id, int n, std::mt19937_64& gen);

/// Runs `id` standalone through the library and through its oracle and pairs
/// every global (and, where supported, every local) value.
std::vector<Check> oracle_checks(const std::string& id, const drdist::ParamMap& params,
                                 const Instance& inst);

}  // namespace support
