#include "drdist/distvis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "drdist/errors.hpp"

namespace drdist {

namespace {

struct Vec2 {
  double x;
  double y;
};

using Polygon = std::vector<Vec2>;

// Keeps the part of `poly` where a.x * p.x + a.y * p.y <= b.
Polygon clip(const Polygon& poly, Vec2 a, double b) {
  Polygon out;
  if (poly.empty()) return out;
  out.reserve(poly.size() + 1);
  auto side = [&](const Vec2& p) { return a.x * p.x + a.y * p.y - b; };
  for (std::size_t t = 0; t < poly.size(); ++t) {
    const auto& p = poly[t];
    const auto& q = poly[(t + 1) % poly.size()];
    const double sp = side(p);
    const double sq = side(q);
    if (sp <= 0.0) out.push_back(p);
    if ((sp < 0.0 && sq > 0.0) || (sp > 0.0 && sq < 0.0)) {
      const double s = sp / (sp - sq);
      out.push_back({p.x + s * (q.x - p.x), p.y + s * (q.y - p.y)});
    }
  }
  return out;
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

void validate(const VizConfig& cfg) {
  if (cfg.width <= 0 || cfg.height <= 0) throw ParamError("width and height must be positive");
  if (!(cfg.margin >= 0.0 && cfg.margin < 0.5)) throw ParamError("margin must be in [0, 0.5)");
  if (cfg.k < 1) throw ParamError("k must be >= 1");
}

// Data-space padded bounding box and its mapping onto the viewport.
struct Frame {
  double x0, y0, sx, sy;
  double lo_x, lo_y, hi_x, hi_y;
  int width, height;

  Frame(const PointMatrix& m, const VizConfig& cfg) : width(cfg.width), height(cfg.height) {
    double min_x = m(0, 0), max_x = m(0, 0), min_y = m(0, 1), max_y = m(0, 1);
    for (std::size_t i = 1; i < m.n_points(); ++i) {
      min_x = std::min(min_x, m(i, 0));
      max_x = std::max(max_x, m(i, 0));
      min_y = std::min(min_y, m(i, 1));
      max_y = std::max(max_y, m(i, 1));
    }
    double span_x = max_x - min_x;
    double span_y = max_y - min_y;
    if (span_x == 0.0) span_x = span_y == 0.0 ? 1.0 : span_y;
    if (span_y == 0.0) span_y = span_x;
    lo_x = min_x - cfg.margin * span_x;
    hi_x = max_x + cfg.margin * span_x;
    lo_y = min_y - cfg.margin * span_y;
    hi_y = max_y + cfg.margin * span_y;
    // Centre the data when a span was defaulted.
    if (max_x == min_x) {
      lo_x = min_x - span_x / 2.0;
      hi_x = min_x + span_x / 2.0;
    }
    if (max_y == min_y) {
      lo_y = min_y - span_y / 2.0;
      hi_y = min_y + span_y / 2.0;
    }
    x0 = lo_x;
    y0 = hi_y;
    sx = cfg.width / (hi_x - lo_x);
    sy = cfg.height / (hi_y - lo_y);
  }

  Vec2 map(Vec2 p) const { return {(p.x - x0) * sx, (y0 - p.y) * sy}; }
};

std::string header(const VizConfig& cfg, const char* kind) {
  const auto w = std::to_string(cfg.width);
  const auto h = std::to_string(cfg.height);
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" class=\"" +
         std::string(kind) + "\" width=\"" + w + "\" height=\"" + h + "\" viewBox=\"0 0 " +
         w + " " + h + "\">\n";
}

void append_points(std::string& svg, const PointMatrix& m, const Frame& frame,
                   const VizConfig& cfg) {
  svg += "<g class=\"points\" fill=\"none\" stroke=\"#333333\" stroke-width=\"0.75\">\n";
  for (std::size_t i = 0; i < m.n_points(); ++i) {
    const auto p = frame.map({m(i, 0), m(i, 1)});
    svg += "<circle class=\"point\" cx=\"" + fmt(p.x) + "\" cy=\"" + fmt(p.y) + "\" r=\"" +
           fmt(cfg.point_radius) + "\"/>\n";
  }
  svg += "</g>\n";
}

void check_collinear(const PointMatrix& m) {
  const auto n = m.n_points();
  std::size_t other = n;
  for (std::size_t i = 1; i < n; ++i) {
    if (m(i, 0) != m(0, 0) || m(i, 1) != m(0, 1)) {
      other = i;
      break;
    }
  }
  if (other == n) throw DegenerateGeometryError("all points coincide");
  const double dx = m(other, 0) - m(0, 0);
  const double dy = m(other, 1) - m(0, 1);
  const double base = std::hypot(dx, dy);
  for (std::size_t i = 1; i < n; ++i) {
    const double ex = m(i, 0) - m(0, 0);
    const double ey = m(i, 1) - m(0, 1);
    const double cross = dx * ey - dy * ex;
    if (std::abs(cross) > 1e-12 * base * std::max(base, std::hypot(ex, ey))) return;
  }
  throw DegenerateGeometryError("all points are collinear; Voronoi cells are undefined");
}

}  // namespace

DistortionField::DistortionField(PointMatrix embedding, std::vector<double> false_values,
                                 std::vector<double> missing_values)
    : embedding_(std::move(embedding)),
      false_(std::move(false_values)),
      missing_(std::move(missing_values)) {
  if (embedding_.dim() != 2) {
    throw DimensionError("visualisation needs a 2-D embedding, got dim = " +
                         std::to_string(embedding_.dim()));
  }
  const auto n = embedding_.n_points();
  if (false_.size() != n || missing_.size() != n) {
    throw ShapeError("distortion vectors must have length N = " + std::to_string(n));
  }
  for (auto* v : {&false_, &missing_}) {
    for (auto& x : *v) {
      if (std::isnan(x)) throw ValueError("distortion value is NaN");
      x = std::clamp(x, 0.0, 1.0);
    }
  }
}

Rgb parse_hex_color(const std::string& hex) {
  auto bad = [&] { return ValueError("bad colour '" + hex + "', expected #rrggbb"); };
  if (hex.size() != 7 || hex[0] != '#') throw bad();
  auto nibble = [&](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw bad();
  };
  auto channel = [&](std::size_t at) {
    return static_cast<double>(nibble(hex[at]) * 16 + nibble(hex[at + 1]));
  };
  return {channel(1), channel(3), channel(5)};
}

std::string to_hex(const Rgb& c) {
  auto byte = [](double v) {
    return static_cast<unsigned>(std::lround(std::clamp(v, 0.0, 255.0)));
  };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", byte(c.r), byte(c.g), byte(c.b));
  return buf;
}

Rgb colormap(double false_value, double missing_value, const VizConfig& cfg) {
  const double f = std::clamp(false_value, 0.0, 1.0);
  const double m = std::clamp(missing_value, 0.0, 1.0);
  const auto c00 = parse_hex_color(cfg.color_none);
  const auto c10 = parse_hex_color(cfg.color_false);
  const auto c01 = parse_hex_color(cfg.color_missing);
  const auto c11 = parse_hex_color(cfg.color_both);
  const double w00 = (1 - f) * (1 - m);
  const double w10 = f * (1 - m);
  const double w01 = (1 - f) * m;
  const double w11 = f * m;
  return {w00 * c00.r + w10 * c10.r + w01 * c01.r + w11 * c11.r,
          w00 * c00.g + w10 * c10.g + w01 * c01.g + w11 * c11.g,
          w00 * c00.b + w10 * c10.b + w01 * c01.b + w11 * c11.b};
}

std::string checkviz(const DistortionField& field, const VizConfig& cfg) {
  validate(cfg);
  const auto& m = field.embedding();
  const auto n = m.n_points();
  if (n < 3) throw TooSmallError("checkviz needs at least 3 points, got " + std::to_string(n));
  check_collinear(m);

  const Frame frame(m, cfg);
  const Polygon box{{frame.lo_x, frame.lo_y},
                    {frame.hi_x, frame.lo_y},
                    {frame.hi_x, frame.hi_y},
                    {frame.lo_x, frame.hi_y}};

  std::string svg = header(cfg, "checkviz");
  svg += "<g class=\"cells\" stroke=\"#bbbbbb\" stroke-width=\"0.5\">\n";
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 p{m(i, 0), m(i, 1)};
    Polygon cell = box;
    for (std::size_t j = 0; j < n && !cell.empty(); ++j) {
      const Vec2 q{m(j, 0), m(j, 1)};
      if (j == i || (q.x == p.x && q.y == p.y)) continue;
      // Closer to p than to q: 2 (q - p) . z <= |q|^2 - |p|^2.
      cell = clip(cell, {2.0 * (q.x - p.x), 2.0 * (q.y - p.y)},
                  q.x * q.x + q.y * q.y - p.x * p.x - p.y * p.y);
    }
    std::string points;
    for (const auto& v : cell) {
      const auto s = frame.map(v);
      if (!points.empty()) points += ' ';
      points += fmt(s.x) + "," + fmt(s.y);
    }
    const auto fill = to_hex(colormap(field.false_values()[i], field.missing_values()[i], cfg));
    svg += "<polygon class=\"cell\" points=\"" + points + "\" fill=\"" + fill + "\"/>\n";
  }
  svg += "</g>\n";
  append_points(svg, m, frame, cfg);
  svg += "</svg>\n";
  return svg;
}

std::string reliability_map(const DistortionField& field, const VizConfig& cfg) {
  validate(cfg);
  const auto& m = field.embedding();
  if (cfg.k >= m.n_points()) {
    throw ParamError("reliability map k = " + std::to_string(cfg.k) +
                     " must be < N = " + std::to_string(m.n_points()));
  }
  return reliability_map(field, compute_knn(compute_distance_matrix(m, Metric::Euclidean), cfg.k),
                         cfg);
}

std::string reliability_map(const DistortionField& field, const KnnTable& knn,
                            const VizConfig& cfg) {
  validate(cfg);
  const auto& m = field.embedding();
  const auto n = m.n_points();
  if (cfg.k >= n) {
    throw ParamError("reliability map k = " + std::to_string(cfg.k) +
                     " must be < N = " + std::to_string(n));
  }
  if (knn.size() != n || knn.k() < cfg.k) {
    throw ConfigError("kNN table does not cover k = " + std::to_string(cfg.k));
  }

  const Frame frame(m, cfg);
  std::string defs = "<defs>\n";
  std::string lines = "<g class=\"edges\" stroke-width=\"1.5\" stroke-linecap=\"round\">\n";
  for (std::size_t i = 0; i < n; ++i) {
    const auto colour = to_hex(colormap(field.false_values()[i], field.missing_values()[i], cfg));
    const auto a = frame.map({m(i, 0), m(i, 1)});
    const auto nbrs = knn.neighbors(i, cfg.k);
    for (std::size_t t = 0; t < cfg.k; ++t) {
      const auto j = static_cast<std::size_t>(nbrs[t]);
      const auto b = frame.map({m(j, 0), m(j, 1)});
      const auto id = "e" + std::to_string(i) + "_" + std::to_string(t);
      const auto coords = "x1=\"" + fmt(a.x) + "\" y1=\"" + fmt(a.y) + "\" x2=\"" + fmt(b.x) +
                          "\" y2=\"" + fmt(b.y) + "\"";
      defs += "<linearGradient id=\"" + id + "\" gradientUnits=\"userSpaceOnUse\" " + coords +
              "><stop offset=\"0\" stop-color=\"" + colour +
              "\" stop-opacity=\"1\"/><stop offset=\"1\" stop-color=\"" + colour +
              "\" stop-opacity=\"0.1\"/></linearGradient>\n";
      lines += "<line class=\"edge\" " + coords + " stroke=\"url(#" + id + ")\"/>\n";
    }
  }
  defs += "</defs>\n";
  lines += "</g>\n";

  std::string svg = header(cfg, "reliability-map");
  svg += "<rect class=\"background\" width=\"" + std::to_string(cfg.width) + "\" height=\"" +
         std::to_string(cfg.height) + "\" fill=\"#d0d0d0\"/>\n";
  svg += defs;
  svg += lines;
  append_points(svg, m, frame, cfg);
  svg += "</svg>\n";
  return svg;
}

std::vector<double> distortion_from_local(const std::vector<double>& local_scores) {
  std::vector<double> out(local_scores.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::clamp(1.0 - local_scores[i], 0.0, 1.0);
  return out;
}

}  // namespace drdist
