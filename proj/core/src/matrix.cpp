#include "drdist/matrix.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "drdist/errors.hpp"

namespace drdist {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view token, std::size_t line_no) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc() || ptr != end) {
    throw FormatError("line " + std::to_string(line_no) + ": cannot parse '" +
                      std::string(token) + "' as a real number");
  }
  if (!std::isfinite(value)) {
    throw ValueError("line " + std::to_string(line_no) +
                     ": non-finite value '" + std::string(token) + "'");
  }
  return value;
}

std::filesystem::path meta_path(const std::filesystem::path& path) {
  auto meta = path;
  meta += ".meta";
  return meta;
}

PointMatrix load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");

  std::vector<double> data;
  std::size_t width = 0;
  std::size_t rows = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto content = trim(line);
    if (content.empty()) continue;
    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
      const auto comma = content.find(',', start);
      data.push_back(parse_real(content.substr(start, comma - start), line_no));
      ++count;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (rows == 0) {
      width = count;
    } else if (count != width) {
      throw FormatError("line " + std::to_string(line_no) + ": expected " +
                        std::to_string(width) + " columns, found " +
                        std::to_string(count));
    }
    ++rows;
  }
  if (rows < 2) {
    throw TooSmallError("'" + path.string() + "' has " + std::to_string(rows) +
                        " rows; at least 2 are required");
  }
  return PointMatrix(rows, width, std::move(data));
}

PointMatrix load_raw(const std::filesystem::path& path) {
  std::ifstream meta(meta_path(path));
  if (!meta) throw IoError("cannot open '" + meta_path(path).string() + "'");
  long long n = -1;
  long long dim = -1;
  if (!(meta >> n >> dim) || n < 0 || dim < 1) {
    throw FormatError("'" + meta_path(path).string() +
                      "' must contain 'N dim' with dim >= 1");
  }
  if (n < 2) {
    throw TooSmallError("'" + path.string() + "' has " + std::to_string(n) +
                        " rows; at least 2 are required");
  }

  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  const auto count = static_cast<std::size_t>(n) * static_cast<std::size_t>(dim);
  std::vector<double> data(count);
  in.read(reinterpret_cast<char*>(data.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (static_cast<std::size_t>(in.gcount()) != count * sizeof(double) ||
      in.peek() != std::char_traits<char>::eof()) {
    throw FormatError("'" + path.string() + "' size does not match N*dim = " +
                      std::to_string(count) + " doubles");
  }
  if constexpr (std::endian::native == std::endian::big) {
    for (auto& v : data) {
      auto bits = std::bit_cast<std::uint64_t>(v);
      bits = __builtin_bswap64(bits);
      v = std::bit_cast<double>(bits);
    }
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::isfinite(data[i])) {
      throw ValueError("'" + path.string() + "': non-finite value at row " +
                       std::to_string(i / static_cast<std::size_t>(dim)));
    }
  }
  return PointMatrix(static_cast<std::size_t>(n), static_cast<std::size_t>(dim),
                     std::move(data));
}

void save_csv(const PointMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  char buf[64];
  for (std::size_t i = 0; i < m.n_points(); ++i) {
    const auto row = m.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out.put(',');
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), row[j]);
      out.write(buf, ptr - buf);
    }
    out.put('\n');
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void save_raw(const PointMatrix& m, const std::filesystem::path& path) {
  {
    std::ofstream meta(meta_path(path));
    if (!meta) throw IoError("cannot write '" + meta_path(path).string() + "'");
    meta << m.n_points() << ' ' << m.dim() << '\n';
    if (!meta) throw IoError("write failed for '" + meta_path(path).string() + "'");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  const auto values = m.data();
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(double)));
  } else {
    for (double v : values) {
      const auto bits = __builtin_bswap64(std::bit_cast<std::uint64_t>(v));
      out.write(reinterpret_cast<const char*>(&bits), sizeof(bits));
    }
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace

PointMatrix::PointMatrix(std::size_t n_points, std::size_t dim,
                         std::vector<double> data)
    : n_points_(n_points), dim_(dim), data_(std::move(data)) {
  if (n_points_ < 2) {
    throw TooSmallError("a point matrix needs at least 2 points, got " +
                        std::to_string(n_points_));
  }
  if (dim_ < 1) throw FormatError("a point matrix needs dim >= 1");
  if (data_.size() != n_points_ * dim_) {
    throw FormatError("data length " + std::to_string(data_.size()) +
                      " does not match " + std::to_string(n_points_) + "x" +
                      std::to_string(dim_));
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      throw ValueError("non-finite entry at row " + std::to_string(i / dim_) +
                       ", column " + std::to_string(i % dim_));
    }
  }
}

PointMatrix PointMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw TooSmallError("a point matrix needs at least 2 points, got 0");
  const auto dim = rows.front().size();
  std::vector<double> data;
  data.reserve(rows.size() * dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) {
      throw FormatError("row " + std::to_string(i) + " has " +
                        std::to_string(rows[i].size()) + " columns, expected " +
                        std::to_string(dim));
    }
    data.insert(data.end(), rows[i].begin(), rows[i].end());
  }
  return PointMatrix(rows.size(), dim, std::move(data));
}

LabelVector::LabelVector(std::vector<std::int64_t> labels)
    : labels_(std::move(labels)) {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] < 0) {
      throw ValueError("label at position " + std::to_string(i) +
                       " is negative");
    }
  }
  classes_ = labels_;
  std::sort(classes_.begin(), classes_.end());
  classes_.erase(std::unique(classes_.begin(), classes_.end()), classes_.end());
  class_index_.reserve(labels_.size());
  for (auto label : labels_) {
    const auto it = std::lower_bound(classes_.begin(), classes_.end(), label);
    class_index_.push_back(static_cast<Index>(it - classes_.begin()));
  }
}

MatrixFormat parse_matrix_format(std::string_view name) {
  if (name == "csv") return MatrixFormat::Csv;
  if (name == "raw-f64" || name == "raw" || name == "f64") return MatrixFormat::RawF64;
  throw ConfigError("unknown matrix format '" + std::string(name) +
                    "' (expected csv or raw-f64)");
}

MatrixFormat guess_matrix_format(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".f64" || ext == ".bin") return MatrixFormat::RawF64;
  return MatrixFormat::Csv;
}

PointMatrix load_matrix(const std::filesystem::path& path, MatrixFormat format) {
  return format == MatrixFormat::Csv ? load_csv(path) : load_raw(path);
}

void save_matrix(const PointMatrix& m, const std::filesystem::path& path,
                 MatrixFormat format) {
  if (format == MatrixFormat::Csv) {
    save_csv(m, path);
  } else {
    save_raw(m, path);
  }
}

LabelVector load_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::vector<std::int64_t> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto token = trim(line);
    if (token.empty()) continue;
    std::int64_t value = 0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc() || ptr != end) {
      throw FormatError("line " + std::to_string(line_no) + ": '" +
                        std::string(token) + "' is not an integer label");
    }
    labels.push_back(value);
  }
  return LabelVector(std::move(labels));
}

void save_labels(const LabelVector& labels, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  for (auto label : labels.labels()) out << label << '\n';
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace drdist
