#include "drdist/scheduler.hpp"

#include <algorithm>
#include <string>

#include "drdist/errors.hpp"
#include "drdist/registry.hpp"

namespace drdist {

namespace {

std::string entry_tag(std::size_t index, const SpecEntry& entry) {
  return "spec entry " + std::to_string(index) + " (" + entry.id + ")";
}

std::optional<std::size_t> entry_k(const SpecEntry& entry) {
  const auto& d = lookup(entry.id);
  if (!d.find_param("k")) return std::nullopt;
  return static_cast<std::size_t>(ResolvedParams(d, entry.params).get_int("k"));
}

void raise_k(std::optional<std::size_t>& slot, std::size_t k) {
  slot = slot ? std::max(*slot, k) : k;
}

void check_all(const MeasureSpec& spec, std::size_t n, const LabelVector* labels) {
  for (std::size_t i = 0; i < spec.entries.size(); ++i) {
    try {
      check_entry(spec.entries[i], n, labels);
    } catch (const Error& e) {
      rethrow_with_context(e, entry_tag(i, spec.entries[i]));
    }
  }
}

}  // namespace

PreprocessPlan derive_plan(const MeasureSpec& spec, bool labels_available, Metric metric) {
  PreprocessPlan plan;
  plan.metric = metric;
  for (std::size_t i = 0; i < spec.entries.size(); ++i) {
    const auto& entry = spec.entries[i];
    const auto& d = lookup(entry.id);
    if (d.needs_labels && !labels_available) {
      throw MissingLabelsError(entry_tag(i, entry) + ": measure needs class labels");
    }
    const auto& r = d.blocks;
    plan.need_dist_high |= r.dist_high;
    plan.need_dist_low |= r.dist_low;
    plan.need_rank_high |= r.rank_high;
    plan.need_rank_low |= r.rank_low;
    if (r.knn_high || r.knn_low) {
      const auto k = entry_k(entry);
      if (!k) throw ConfigError(entry_tag(i, entry) + ": kNN requirement without k");
      if (r.knn_high) raise_k(plan.knn_k_high, *k);
      if (r.knn_low) raise_k(plan.knn_k_low, *k);
    }
  }
  // Ranks and kNN are derived from the distance matrix of their space.
  plan.need_dist_high |= plan.need_rank_high || plan.knn_k_high.has_value();
  plan.need_dist_low |= plan.need_rank_low || plan.knn_k_low.has_value();
  return plan;
}

std::vector<std::string> unmet_requirements(const PreprocessPlan& plan,
                                            const MeasureSpec& spec) {
  std::vector<std::string> unmet;
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) unmet.push_back(what);
  };
  for (std::size_t i = 0; i < spec.entries.size(); ++i) {
    const auto& entry = spec.entries[i];
    const auto& r = lookup(entry.id).blocks;
    const auto tag = entry_tag(i, entry);
    need(!r.dist_high || plan.need_dist_high, tag + " needs high distances");
    need(!r.dist_low || plan.need_dist_low, tag + " needs low distances");
    need(!r.rank_high || plan.need_rank_high, tag + " needs high ranks");
    need(!r.rank_low || plan.need_rank_low, tag + " needs low ranks");
    if (r.knn_high || r.knn_low) {
      const auto k = entry_k(entry).value_or(0);
      need(!r.knn_high || plan.knn_k_high.value_or(0) >= k,
           tag + " needs high kNN at k = " + std::to_string(k));
      need(!r.knn_low || plan.knn_k_low.value_or(0) >= k,
           tag + " needs low kNN at k = " + std::to_string(k));
    }
  }
  need(plan.need_dist_high || (!plan.need_rank_high && !plan.knn_k_high),
       "high ranks/kNN need high distances");
  need(plan.need_dist_low || (!plan.need_rank_low && !plan.knn_k_low),
       "low ranks/kNN need low distances");
  return unmet;
}

Engine::Engine(MeasureSpec spec, PointMatrix high, EngineOptions options,
               std::optional<LabelVector> labels)
    : spec_(std::move(spec)),
      high_(std::move(high)),
      options_(options),
      labels_(std::move(labels)) {
  plan_ = derive_plan(spec_, labels_.has_value(), options_.metric);
  check_all(spec_, high_.n_points(), labels_ ? &*labels_ : nullptr);
  high_blocks_ = build_space_blocks(high_, plan_.need_dist_high, plan_.need_rank_high,
                                    plan_.knn_k_high, plan_.metric, &high_counts_);
}

std::vector<MeasureOutput> Engine::run(const PointMatrix& y, const LabelVector* labels,
                                       BlockCounts* counts) const {
  if (y.n_points() != high_.n_points()) {
    throw ShapeError("embedding has N = " + std::to_string(y.n_points()) +
                     " but the registered data has N = " +
                     std::to_string(high_.n_points()));
  }
  const LabelVector* use = labels ? labels : (labels_ ? &*labels_ : nullptr);
  check_all(spec_, y.n_points(), use);

  BlockCounts low_counts;
  auto low = build_space_blocks(y, plan_.need_dist_low, plan_.need_rank_low,
                                plan_.knn_k_low, plan_.metric, &low_counts);
  if (counts) *counts += low_counts;
  const PreprocessCache cache(high_blocks_, std::move(low), low_counts);

  const MeasureInputs inputs{&high_, &y, &cache, use};
  std::vector<MeasureOutput> outputs;
  outputs.reserve(spec_.entries.size());
  for (std::size_t i = 0; i < spec_.entries.size(); ++i) {
    try {
      outputs.push_back(evaluate_measure(spec_.entries[i], inputs, options_.return_local));
    } catch (const Error& e) {
      rethrow_with_context(e, entry_tag(i, spec_.entries[i]));
    }
  }
  return outputs;
}

MeasureOutput run_standalone(const SpecEntry& entry, const PointMatrix& x,
                             const PointMatrix& y, const LabelVector* labels,
                             const EngineOptions& options, BlockCounts* counts) {
  if (x.n_points() != y.n_points()) throw ShapeError("high and low matrices differ in N");
  const MeasureSpec single{{entry}};
  const auto plan = derive_plan(single, labels != nullptr, options.metric);
  check_entry(entry, x.n_points(), labels);
  const auto cache = build_cache(x, y, plan);
  if (counts) *counts += cache.counts();
  return evaluate_measure(entry, MeasureInputs{&x, &y, &cache, labels},
                          options.return_local);
}

}  // namespace drdist
