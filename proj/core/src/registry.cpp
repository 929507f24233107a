#include "drdist/registry.hpp"

#include <cmath>
#include <limits>

#include "drdist/errors.hpp"
#include "json.hpp"

namespace drdist {

namespace {

constexpr double kIntMax = 1e9;

ParamSchema int_param(std::string name, std::int64_t def, double min,
                      double max = kIntMax) {
  return {std::move(name), ParamType::Int, def, min, max, {}};
}

ParamSchema real_param(std::string name, double def, double min, double max) {
  return {std::move(name), ParamType::Real, def, min, max, {}};
}

ParamSchema choice_param(std::string name, std::string def,
                         std::vector<std::string> choices) {
  return {std::move(name), ParamType::String, std::move(def), 0.0, 0.0,
          std::move(choices)};
}

ParamSchema k_param(double min = 1) { return int_param("k", 20, min); }
ParamSchema seed_param() { return int_param("seed", 42, 0, 4294967295.0); }
ParamSchema sigma_param() {
  return real_param("sigma", 0.1, std::numeric_limits<double>::min(),
                    std::numeric_limits<double>::max());
}

constexpr auto H = Orientation::HigherBetter;
constexpr auto L = Orientation::LowerBetter;

BlockSet rank_knn_both() {
  BlockSet b;
  b.rank_high = b.rank_low = true;
  b.knn_high = b.knn_low = true;
  return b;
}
BlockSet knn_both() {
  BlockSet b;
  b.knn_high = b.knn_low = true;
  return b;
}
BlockSet dist_both() {
  BlockSet b;
  b.dist_high = b.dist_low = true;
  return b;
}

std::vector<MeasureDescriptor> build_registry() {
  std::vector<MeasureDescriptor> r;

  // Local measures.
  r.push_back({"tnc", "Trustworthiness & Continuity", Family::Local,
               rank_knn_both(), false, true, {k_param()},
               {{"trustworthiness", H}, {"continuity", H}}});
  r.push_back({"mrre", "Mean Relative Rank Errors", Family::Local,
               rank_knn_both(), false, true, {k_param()},
               {{"mrre_false", H}, {"mrre_missing", H}}});
  r.push_back({"lcmc", "Local Continuity Meta-Criteria", Family::Local,
               knn_both(), false, true, {k_param()}, {{"lcmc", H}}});
  {
    BlockSet b;
    b.knn_low = true;
    r.push_back({"nh", "Neighborhood Hit", Family::Local, b, true, true,
                 {k_param()}, {{"neighborhood_hit", H}}});
  }
  r.push_back({"nd", "Neighbor Dissimilarity", Family::Local, knn_both(),
               false, false, {k_param()}, {{"neighbor_dissimilarity", L}}});
  r.push_back({"ca_tnc", "Class-Aware Trustworthiness & Continuity",
               Family::Local, rank_knn_both(), true, true, {k_param()},
               {{"ca_trustworthiness", H}, {"ca_continuity", H}}});
  {
    BlockSet b;
    b.knn_high = true;
    r.push_back({"procrustes", "Procrustes Measure", Family::Local, b, false,
                 false, {k_param(2)}, {{"procrustes", L}}});
  }

  // Cluster-level measures.
  {
    BlockSet b = knn_both();
    b.dist_high = b.dist_low = true;
    r.push_back({"snc", "Steadiness & Cohesiveness", Family::Cluster, b, false,
                 true,
                 {k_param(), int_param("iterations", 200, 1),
                  choice_param("clustering", "hdbscan", {"hdbscan", "kmeans"}),
                  seed_param(), int_param("min_cluster_size", 5, 2),
                  int_param("n_clusters", 3, 2), int_param("walk_count", 10, 1),
                  int_param("walk_length", 8, 1)},
                 {{"steadiness", H}, {"cohesiveness", H}}});
  }
  r.push_back({"dsc", "Distance Consistency", Family::Cluster, {}, true, false,
               {}, {{"distance_consistency", H}}});
  {
    BlockSet b;
    b.dist_low = true;
    r.push_back({"ivm", "Internal Clustering Validation Measures",
                 Family::Cluster, b, true, false,
                 {choice_param("variant", "silhouette",
                               {"silhouette", "calinski_harabasz",
                                "davies_bouldin"})},
                 {{"ivm", H}}});
  }
  r.push_back({"cvm", "Clustering + External Clustering Validation Measures",
               Family::Cluster, {}, true, false,
               {choice_param("external", "ari", {"ari", "nmi"}),
                int_param("n_clusters", 0, 0), seed_param()},
               {{"cvm", H}}});

  // Global measures.
  r.push_back({"stress", "Stress", Family::Global, dist_both(), false, false,
               {}, {{"stress", L}}});
  r.push_back({"kl_div", "Kullback-Leibler Divergence", Family::Global,
               dist_both(), false, false, {sigma_param()},
               {{"kl_divergence", L}}});
  r.push_back({"dtm", "Distance-to-Measure", Family::Global, dist_both(), false,
               false, {sigma_param()}, {{"dtm", L}}});
  {
    BlockSet b = dist_both();
    b.rank_high = b.rank_low = true;
    r.push_back({"topo", "Topographic Product", Family::Global, b, false, false,
                 {int_param("max_k", 0, 0)},
                 {{"topographic_product", Orientation::ZeroBest}}});
  }
  r.push_back({"pearson_r", "Pearson's correlation coefficient r",
               Family::Global, dist_both(), false, false, {},
               {{"pearson_r", H}}});
  r.push_back({"spearman_rho", "Spearman's rank correlation coefficient rho",
               Family::Global, dist_both(), false, false, {},
               {{"spearman_rho", H}}});
  return r;
}

const std::vector<MeasureDescriptor>& registry() {
  static const std::vector<MeasureDescriptor> instance = build_registry();
  return instance;
}

std::string_view type_name(ParamType type) {
  switch (type) {
    case ParamType::Int: return "int";
    case ParamType::Real: return "real";
    case ParamType::String: return "string";
  }
  return "?";
}

}  // namespace

std::string to_string(const ParamValue& value) {
  if (const auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&value)) {
    nlohmann::json j = *d;
    return j.dump();
  }
  return std::get<std::string>(value);
}

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::Local: return "local";
    case Family::Cluster: return "cluster";
    case Family::Global: return "global";
  }
  return "?";
}

std::string_view to_string(Orientation orientation) noexcept {
  switch (orientation) {
    case Orientation::HigherBetter: return "higher_better";
    case Orientation::LowerBetter: return "lower_better";
    case Orientation::ZeroBest: return "zero_best";
  }
  return "?";
}

const ParamSchema* MeasureDescriptor::find_param(std::string_view name) const noexcept {
  for (const auto& p : params) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

std::span<const MeasureDescriptor> all_measures() noexcept { return registry(); }

const MeasureDescriptor& lookup(std::string_view id) {
  for (const auto& d : registry()) {
    if (d.id == id) return d;
  }
  std::string valid;
  for (const auto& d : registry()) {
    if (!valid.empty()) valid += ", ";
    valid += d.id;
  }
  throw NotFoundError("unknown measure id '" + std::string(id) +
                      "'; valid ids: " + valid);
}

void validate_params(const MeasureDescriptor& descriptor, const ParamMap& params) {
  for (const auto& [name, value] : params) {
    const auto* schema = descriptor.find_param(name);
    if (!schema) {
      std::string declared;
      for (const auto& p : descriptor.params) {
        if (!declared.empty()) declared += ", ";
        declared += p.name;
      }
      throw ParamError("measure '" + descriptor.id + "' has no parameter '" +
                       name + "'" +
                       (declared.empty() ? std::string(" (it takes none)")
                                         : "; declared: " + declared));
    }
    const auto where = descriptor.id + "." + name;
    switch (schema->type) {
      case ParamType::Int: {
        const auto* i = std::get_if<std::int64_t>(&value);
        if (!i) throw ParamError(where + " must be an integer");
        if (static_cast<double>(*i) < schema->min ||
            static_cast<double>(*i) > schema->max) {
          throw ParamError(where + " = " + std::to_string(*i) +
                           " is out of range [" + to_string(ParamValue(schema->min)) +
                           ", " + to_string(ParamValue(schema->max)) + "]");
        }
        break;
      }
      case ParamType::Real: {
        double v = 0.0;
        if (const auto* i = std::get_if<std::int64_t>(&value)) {
          v = static_cast<double>(*i);
        } else if (const auto* d = std::get_if<double>(&value)) {
          v = *d;
        } else {
          throw ParamError(where + " must be a number");
        }
        if (!std::isfinite(v) || v < schema->min || v > schema->max) {
          throw ParamError(where + " = " + to_string(value) + " is out of range");
        }
        break;
      }
      case ParamType::String: {
        const auto* s = std::get_if<std::string>(&value);
        if (!s) throw ParamError(where + " must be a string");
        bool ok = false;
        for (const auto& c : schema->choices) ok = ok || c == *s;
        if (!ok) {
          std::string choices;
          for (const auto& c : schema->choices) {
            if (!choices.empty()) choices += ", ";
            choices += c;
          }
          throw ParamError(where + " = '" + *s + "' is not one of: " + choices);
        }
        break;
      }
    }
  }
}

ResolvedParams::ResolvedParams(const MeasureDescriptor& descriptor,
                               const ParamMap& params)
    : descriptor_(&descriptor) {
  validate_params(descriptor, params);
  for (const auto& p : descriptor.params) values_.emplace(p.name, p.default_value);
  for (const auto& [name, value] : params) values_[name] = value;
}

const ParamValue& ResolvedParams::at(std::string_view name) const {
  const auto it = values_.find(name);
  if (it == values_.end()) {
    throw ParamError("measure '" + descriptor_->id + "' has no parameter '" +
                     std::string(name) + "'");
  }
  return it->second;
}

std::int64_t ResolvedParams::get_int(std::string_view name) const {
  return std::get<std::int64_t>(at(name));
}

double ResolvedParams::get_real(std::string_view name) const {
  const auto& v = at(name);
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  return std::get<double>(v);
}

const std::string& ResolvedParams::get_string(std::string_view name) const {
  return std::get<std::string>(at(name));
}

std::string registry_json() {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& d : registry()) {
    nlohmann::ordered_json entry;
    entry["id"] = d.id;
    entry["title"] = d.title;
    entry["family"] = to_string(d.family);
    nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
    if (d.blocks.dist_high) blocks.push_back("dist_high");
    if (d.blocks.dist_low) blocks.push_back("dist_low");
    if (d.blocks.rank_high) blocks.push_back("rank_high");
    if (d.blocks.rank_low) blocks.push_back("rank_low");
    if (d.blocks.knn_high) blocks.push_back("knn_high");
    if (d.blocks.knn_low) blocks.push_back("knn_low");
    entry["requires"] = blocks;
    entry["needs_labels"] = d.needs_labels;
    entry["supports_local"] = d.supports_local;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& p : d.params) {
      nlohmann::ordered_json schema;
      schema["type"] = type_name(p.type);
      std::visit([&](const auto& v) { schema["default"] = v; }, p.default_value);
      if (p.type == ParamType::String) {
        schema["choices"] = p.choices;
      } else {
        schema["min"] = p.min;
        schema["max"] = p.max;
      }
      params[p.name] = schema;
    }
    entry["params"] = params;
    nlohmann::ordered_json scores = nlohmann::ordered_json::object();
    for (const auto& s : d.scores) scores[s.name] = to_string(s.orientation);
    entry["orientation"] = scores;
    out.push_back(entry);
  }
  return out.dump(2);
}

}  // namespace drdist
