#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace drdist {

using Index = std::int32_t;

/// Dense N x dim row-major matrix of finite reals. Immutable once built.
///
/// Used for both the high-dimensional data and its embedding. Construction
/// validates N >= 2, dim >= 1 and that every entry is finite.
class PointMatrix {
 public:
  PointMatrix(std::size_t n_points, std::size_t dim, std::vector<double> data);

  static PointMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t n_points() const noexcept { return n_points_; }
  std::size_t dim() const noexcept { return dim_; }

  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * dim_, dim_};
  }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * dim_ + j];
  }
  std::span<const double> data() const noexcept { return data_; }

 private:
  std::size_t n_points_;
  std::size_t dim_;
  std::vector<double> data_;
};

/// Length-N class labels (non-negative integers).
class LabelVector {
 public:
  explicit LabelVector(std::vector<std::int64_t> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  std::int64_t operator[](std::size_t i) const noexcept { return labels_[i]; }
  std::span<const std::int64_t> labels() const noexcept { return labels_; }

  std::size_t n_classes() const noexcept { return classes_.size(); }
  /// Distinct labels in ascending order.
  std::span<const std::int64_t> classes() const noexcept { return classes_; }
  /// Position of each point's label within classes(); 0..n_classes-1.
  std::span<const Index> class_index() const noexcept { return class_index_; }

 private:
  std::vector<std::int64_t> labels_;
  std::vector<std::int64_t> classes_;
  std::vector<Index> class_index_;
};

enum class MatrixFormat { Csv, RawF64 };

MatrixFormat parse_matrix_format(std::string_view name);

/// Raw-f64 stores little-endian doubles at `path` and "N dim" in `path.meta`.
PointMatrix load_matrix(const std::filesystem::path& path, MatrixFormat format);
void save_matrix(const PointMatrix& m, const std::filesystem::path& path,
                 MatrixFormat format);

/// Picks RawF64 for *.f64 / *.bin paths, CSV otherwise.
MatrixFormat guess_matrix_format(const std::filesystem::path& path);

/// Single-column CSV of integers.
LabelVector load_labels(const std::filesystem::path& path);
void save_labels(const LabelVector& labels, const std::filesystem::path& path);

}  // namespace drdist
