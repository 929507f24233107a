#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "drdist/params.hpp"

namespace drdist {

enum class Family { Local, Cluster, Global };
enum class Orientation { HigherBetter, LowerBetter, ZeroBest };
enum class ParamType { Int, Real, String };

std::string_view to_string(Family family) noexcept;
std::string_view to_string(Orientation orientation) noexcept;

struct ParamSchema {
  std::string name;
  ParamType type;
  ParamValue default_value;
  // Inclusive numeric bounds; ignored for strings.
  double min = 0.0;
  double max = 0.0;
  std::vector<std::string> choices;
};

/// Preprocessing blocks a measure consumes. kNN sizes come from the
/// measure's "k" parameter.
struct BlockSet {
  bool dist_high = false;
  bool dist_low = false;
  bool rank_high = false;
  bool rank_low = false;
  bool knn_high = false;
  bool knn_low = false;

  bool operator==(const BlockSet&) const = default;
};

struct ScoreInfo {
  std::string name;
  Orientation orientation;
};

struct MeasureDescriptor {
  std::string id;
  std::string title;
  Family family;
  BlockSet blocks;
  bool needs_labels = false;
  bool supports_local = false;
  std::vector<ParamSchema> params;
  std::vector<ScoreInfo> scores;

  const ParamSchema* find_param(std::string_view name) const noexcept;
};

/// All 17 measures in catalogue order.
std::span<const MeasureDescriptor> all_measures() noexcept;

/// Throws NotFoundError listing the valid ids.
const MeasureDescriptor& lookup(std::string_view id);

/// Typed accessor over a spec entry's params with registry defaults filled in.
class ResolvedParams {
 public:
  ResolvedParams(const MeasureDescriptor& descriptor, const ParamMap& params);

  std::int64_t get_int(std::string_view name) const;
  double get_real(std::string_view name) const;
  const std::string& get_string(std::string_view name) const;

  const ParamMap& values() const noexcept { return values_; }

 private:
  const ParamValue& at(std::string_view name) const;

  const MeasureDescriptor* descriptor_;
  ParamMap values_;
};

/// Checks that `params` only names declared parameters with the right type
/// and within range. Throws ParamError.
void validate_params(const MeasureDescriptor& descriptor, const ParamMap& params);

/// Registry as a JSON document (for `drdist measure --list`).
std::string registry_json();

}  // namespace drdist
