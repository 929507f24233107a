#include "drdist/bench.hpp"

#include <chrono>
#include <numeric>

#include "drdist/errors.hpp"
#include "drdist/scheduler.hpp"
#include "drdist/synthetic.hpp"

namespace drdist {

namespace {

template <class F>
double seconds(F&& body) {
  const auto start = std::chrono::steady_clock::now();
  body();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

BenchReport run_benchmark(const MeasureSpec& spec, const PointMatrix& x,
                          const LabelVector* labels, const BenchOptions& options) {
  if (options.repetitions < 1) throw ParamError("repetitions must be >= 1");
  BenchReport report;
  report.n_points = x.n_points();
  report.dim = x.dim();
  EngineOptions engine_options;
  engine_options.metric = options.metric;
  std::optional<LabelVector> owned;
  if (labels) owned = *labels;

  for (std::size_t rep = 0; rep < options.repetitions; ++rep) {
    const auto y = random_projection(x, 2, options.seed + rep, options.jitter);
    report.optimized_seconds.push_back(seconds([&] {
      const Engine engine(spec, x, engine_options, owned);
      const auto out = engine.run(y);
      (void)out;
    }));
    report.naive_seconds.push_back(seconds([&] {
      for (const auto& entry : spec.entries) {
        const auto out = run_standalone(entry, x, y, labels, engine_options);
        (void)out;
      }
    }));
  }
  report.mean_optimized = mean(report.optimized_seconds);
  report.mean_naive = mean(report.naive_seconds);
  report.speedup = report.mean_naive / report.mean_optimized;
  return report;
}

}  // namespace drdist
