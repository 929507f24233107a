#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "drdist/matrix.hpp"
#include "drdist/measures.hpp"
#include "drdist/preprocess.hpp"
#include "drdist/spec.hpp"

namespace drdist {

/// Union of the registry requirements of every entry. kNN is sized to the
/// largest k asked for in each space, and any rank or kNN block pulls in the
/// distances it is derived from. Throws MissingLabelsError when an entry needs
/// labels and none are available.
PreprocessPlan derive_plan(const MeasureSpec& spec, bool labels_available,
                           Metric metric = Metric::Euclidean);

/// Requirements of `spec` that `plan` does not cover, as readable strings.
/// Empty means the plan is sufficient.
std::vector<std::string> unmet_requirements(const PreprocessPlan& plan,
                                            const MeasureSpec& spec);

inline bool requirements_satisfied(const PreprocessPlan& plan, const MeasureSpec& spec) {
  return unmet_requirements(plan, spec).empty();
}

struct EngineOptions {
  bool return_local = false;
  Metric metric = Metric::Euclidean;
};

/// A spec bound to one high-dimensional dataset. High-space blocks are
/// computed once at construction and shared by every later `run`; each run
/// builds its own low-space blocks, so concurrent runs are safe.
class Engine {
 public:
  Engine(MeasureSpec spec, PointMatrix high, EngineOptions options = {},
         std::optional<LabelVector> labels = std::nullopt);

  /// Scores `y` against the registered data, outputs in spec order. `labels`
  /// overrides the registered labels for this call. When `counts` is given,
  /// the low-space blocks built by this call are added to it.
  std::vector<MeasureOutput> run(const PointMatrix& y,
                                 const LabelVector* labels = nullptr,
                                 BlockCounts* counts = nullptr) const;

  const MeasureSpec& spec() const noexcept { return spec_; }
  const PointMatrix& high() const noexcept { return high_; }
  const PreprocessPlan& plan() const noexcept { return plan_; }
  const EngineOptions& options() const noexcept { return options_; }
  /// Blocks computed for the high space at construction.
  const BlockCounts& high_counts() const noexcept { return high_counts_; }

 private:
  MeasureSpec spec_;
  PointMatrix high_;
  EngineOptions options_;
  std::optional<LabelVector> labels_;
  PreprocessPlan plan_;
  SpaceBlocks high_blocks_;
  BlockCounts high_counts_;
};

/// One measure with its own freshly computed blocks and no reuse.
MeasureOutput run_standalone(const SpecEntry& entry, const PointMatrix& x,
                             const PointMatrix& y, const LabelVector* labels = nullptr,
                             const EngineOptions& options = {},
                             BlockCounts* counts = nullptr);

}  // namespace drdist
