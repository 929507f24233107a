#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "drdist/matrix.hpp"
#include "drdist/preprocess.hpp"

namespace drdist {

/// Per-point false/missing distortions over a 2-D embedding. Values are
/// clamped to [0, 1] on construction.
class DistortionField {
 public:
  DistortionField(PointMatrix embedding, std::vector<double> false_values,
                  std::vector<double> missing_values);

  const PointMatrix& embedding() const noexcept { return embedding_; }
  const std::vector<double>& false_values() const noexcept { return false_; }
  const std::vector<double>& missing_values() const noexcept { return missing_; }
  std::size_t size() const noexcept { return false_.size(); }

 private:
  PointMatrix embedding_;
  std::vector<double> false_;
  std::vector<double> missing_;
};

struct VizConfig {
  int width = 800;
  int height = 800;
  double margin = 0.05;  // fraction of the data extent added on each side
  std::size_t k = 5;     // reliability map edges per point
  std::string color_none = "#ffffff";
  std::string color_false = "#b05cc6";
  std::string color_missing = "#63b663";
  std::string color_both = "#000000";
  double point_radius = 2.0;
};

struct Rgb {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;
};

Rgb parse_hex_color(const std::string& hex);
std::string to_hex(const Rgb& c);

/// Bilinear blend of the four corner colours: (0,0) none, (1,0) false,
/// (0,1) missing, (1,1) both. Channels in [0, 255].
Rgb colormap(double false_value, double missing_value, const VizConfig& cfg = {});

/// Voronoi cells coloured by distortion. Throws TooSmallError for N < 3 and
/// DegenerateGeometryError when all points are collinear.
std::string checkviz(const DistortionField& field, const VizConfig& cfg = {});

/// One fading line per directed kNN edge of the embedding (N * cfg.k lines).
/// Throws ParamError when cfg.k >= N.
std::string reliability_map(const DistortionField& field, const VizConfig& cfg = {});
std::string reliability_map(const DistortionField& field, const KnnTable& knn,
                            const VizConfig& cfg = {});

/// Local distortions from a measure's locals: 1 - local score.
std::vector<double> distortion_from_local(const std::vector<double>& local_scores);

}  // namespace drdist
