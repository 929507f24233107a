#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "drdist/bench.hpp"
#include "drdist/distvis.hpp"
#include "drdist/errors.hpp"
#include "drdist/registry.hpp"
#include "drdist/scheduler.hpp"

namespace drdist::cli {

namespace {

using Json = nlohmann::ordered_json;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config:
    case ErrorKind::Param:
    case ErrorKind::NotFound:
      return 2;
    case ErrorKind::DegenerateInput:
    case ErrorKind::DegenerateGeometry:
      return 4;
    default:
      return 3;
  }
}

void report_error(std::ostream& err, std::string_view kind, const std::string& message) {
  Json j;
  j["error"] = {{"kind", kind}, {"message", message}};
  err << j.dump() << '\n';
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw IoError("cannot write '" + out_path + "'");
  f << text;
  if (!f) throw IoError("failed writing '" + out_path + "'");
}

PointMatrix load(const std::string& path) { return load_matrix(path, guess_matrix_format(path)); }

std::optional<LabelVector> load_optional_labels(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return load_labels(path);
}

// Fills "seed" for entries that declare it but leave it unset.
MeasureSpec apply_seed(MeasureSpec spec, std::int64_t seed) {
  for (auto& entry : spec.entries) {
    if (lookup(entry.id).find_param("seed") && !entry.params.contains("seed")) {
      entry.params["seed"] = seed;
    }
  }
  return spec;
}

Json to_json(const MeasureOutput& m) {
  Json j;
  j["id"] = m.id;
  j["globals"] = Json::object();
  for (const auto& [name, v] : m.globals) j["globals"][name] = v;
  if (m.locals) {
    j["locals"] = Json::object();
    for (const auto& [name, v] : *m.locals) j["locals"][name] = v;
  }
  j["orientation"] = Json::object();
  for (const auto& [name, o] : m.orientation) j["orientation"][name] = to_string(o);
  return j;
}

struct MeasureArgs {
  std::string high, low, labels, spec, metric = "euclidean", out;
  bool local = false;
  bool list = false;
  std::int64_t seed = 42;
};

int cmd_measure(const MeasureArgs& a, std::ostream& out) {
  if (a.list) {
    emit(registry_json() + "\n", a.out, out);
    return 0;
  }
  for (const auto* p : {&a.high, &a.low, &a.spec}) {
    if (p->empty()) throw ConfigError("measure needs --high, --low and --spec (or --list)");
  }
  const auto start = std::chrono::steady_clock::now();
  const auto metric = parse_metric(a.metric);
  auto spec = apply_seed(load_spec(a.spec), a.seed);
  auto x = load(a.high);
  const auto y = load(a.low);
  auto labels = load_optional_labels(a.labels);
  const auto dims = std::make_pair(x.dim(), y.dim());
  const auto n = x.n_points();

  const Engine engine(std::move(spec), std::move(x), EngineOptions{a.local, metric},
                      std::move(labels));
  const auto outputs = engine.run(y);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  Json doc;
  doc["measures"] = Json::array();
  for (const auto& m : outputs) doc["measures"].push_back(to_json(m));
  doc["meta"] = {{"n_points", n},
                 {"dim_high", dims.first},
                 {"dim_low", dims.second},
                 {"metric", std::string(to_string(metric))},
                 {"seed", a.seed},
                 {"wall_time_seconds", wall}};
  emit(doc.dump(2) + "\n", a.out, out);
  return 0;
}

struct VizArgs {
  std::string low, locals, kind = "checkviz", measure, out;
  std::size_t k = 5;
  int width = 800;
  int height = 800;
};

std::vector<double> number_array(const Json& j, const std::string& key) {
  if (!j.is_array()) throw InputError("locals '" + key + "' is not an array");
  std::vector<double> v;
  v.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) throw InputError("locals '" + key + "' has a non-numeric entry");
    v.push_back(x.get<double>());
  }
  return v;
}

// Picks a (false, missing) pair of local scores from a measure report.
std::pair<std::vector<double>, std::vector<double>> pick_locals(const Json& doc,
                                                                const std::string& wanted) {
  static const std::pair<const char*, const char*> pairs[] = {
      {"local_steadiness", "local_cohesiveness"},
      {"local_trustworthiness", "local_continuity"},
      {"local_mrre_false", "local_mrre_missing"},
      {"local_ca_trustworthiness", "local_ca_continuity"},
  };
  if (!doc.is_object() || !doc.contains("measures") || !doc["measures"].is_array()) {
    throw InputError("locals file is not a drdist measure report");
  }
  for (const auto& [f, m] : pairs) {
    for (const auto& entry : doc["measures"]) {
      if (!wanted.empty() && entry.value("id", "") != wanted) continue;
      if (!entry.contains("locals")) continue;
      const auto& loc = entry["locals"];
      if (loc.contains(f) && loc.contains(m)) {
        return {distortion_from_local(number_array(loc[f], f)),
                distortion_from_local(number_array(loc[m], m))};
      }
    }
  }
  throw InputError(wanted.empty()
                       ? "no false/missing local pair in the report (run measure --local)"
                       : "measure '" + wanted + "' has no false/missing local pair");
}

int cmd_viz(const VizArgs& a, std::ostream& out) {
  if (a.low.empty() || a.locals.empty()) throw ConfigError("viz needs --low and --locals");
  if (a.kind != "checkviz" && a.kind != "relmap") {
    throw ConfigError("--kind must be checkviz or relmap");
  }
  Json doc;
  try {
    doc = Json::parse(read_text(a.locals));
  } catch (const Json::parse_error& e) {
    throw InputError("locals file is not valid JSON: " + std::string(e.what()));
  }
  auto y = load(a.low);
  auto [f, m] = pick_locals(doc, a.measure);
  const DistortionField field(std::move(y), std::move(f), std::move(m));
  VizConfig cfg;
  cfg.width = a.width;
  cfg.height = a.height;
  cfg.k = a.k;
  emit(a.kind == "checkviz" ? checkviz(field, cfg) : reliability_map(field, cfg), a.out, out);
  return 0;
}

struct BenchArgs {
  std::string high, labels, spec, metric = "euclidean", out;
  std::int64_t reps = 5;
  std::int64_t seed = 42;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  if (a.high.empty() || a.spec.empty()) throw ConfigError("bench needs --high and --spec");
  if (a.reps < 1) throw ParamError("--reps must be >= 1");
  const auto spec = apply_seed(load_spec(a.spec), a.seed);
  const auto x = load(a.high);
  const auto labels = load_optional_labels(a.labels);
  BenchOptions opts;
  opts.repetitions = static_cast<std::size_t>(a.reps);
  opts.seed = static_cast<std::uint64_t>(a.seed);
  opts.metric = parse_metric(a.metric);
  const auto r = run_benchmark(spec, x, labels ? &*labels : nullptr, opts);

  Json doc;
  doc["n_points"] = r.n_points;
  doc["dim"] = r.dim;
  doc["repetitions"] = a.reps;
  doc["seed"] = a.seed;
  doc["optimized_seconds"] = r.optimized_seconds;
  doc["naive_seconds"] = r.naive_seconds;
  doc["mean_optimized_seconds"] = r.mean_optimized;
  doc["mean_naive_seconds"] = r.mean_naive;
  doc["speedup"] = r.speedup;
  emit(doc.dump(2) + "\n", a.out, out);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distortion measures for dimensionality-reduction embeddings", "drdist"};
  app.require_subcommand(1);

  MeasureArgs ma;
  auto* measure = app.add_subcommand("measure", "Score an embedding against its data");
  measure->add_option("--high", ma.high, "High-dimensional data (CSV, or .f64 raw)");
  measure->add_option("--low", ma.low, "Embedding (CSV, or .f64 raw)");
  measure->add_option("--labels", ma.labels, "Class labels, one integer per line");
  measure->add_option("--spec", ma.spec, "Measure spec JSON");
  measure->add_flag("--local", ma.local, "Include per-point scores where supported");
  measure->add_option("--metric", ma.metric, "euclidean or cosine")->capture_default_str();
  measure->add_option("--seed", ma.seed, "Seed for randomized measures")->capture_default_str();
  measure->add_option("--out", ma.out, "Write the JSON report here instead of stdout");
  measure->add_flag("--list", ma.list, "Print the measure registry as JSON");

  VizArgs va;
  auto* viz = app.add_subcommand("viz", "Render local distortions as SVG");
  viz->add_option("--low", va.low, "2-D embedding")->required();
  viz->add_option("--locals", va.locals, "Report from `measure --local`")->required();
  viz->add_option("--kind", va.kind, "checkviz or relmap")->capture_default_str();
  viz->add_option("--measure", va.measure, "Measure id whose locals to draw");
  viz->add_option("--k", va.k, "Edges per point for relmap")->capture_default_str();
  viz->add_option("--width", va.width)->capture_default_str();
  viz->add_option("--height", va.height)->capture_default_str();
  viz->add_option("--out", va.out, "Write the SVG here instead of stdout");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Time scheduled vs. standalone evaluation");
  bench->add_option("--high", ba.high, "High-dimensional data")->required();
  bench->add_option("--spec", ba.spec, "Measure spec JSON")->required();
  bench->add_option("--labels", ba.labels, "Class labels");
  bench->add_option("--reps", ba.reps, "Repetitions")->capture_default_str();
  bench->add_option("--seed", ba.seed)->capture_default_str();
  bench->add_option("--metric", ba.metric)->capture_default_str();
  bench->add_option("--out", ba.out, "Write the JSON report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    report_error(err, "UsageError", e.what());
    return 2;
  }

  try {
    if (measure->parsed()) return cmd_measure(ma, out);
    if (viz->parsed()) return cmd_viz(va, out);
    return cmd_bench(ba, out);
  } catch (const Error& e) {
    report_error(err, to_string(e.kind()), e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    report_error(err, "InternalError", e.what());
    return 1;
  }
}

}  // namespace drdist::cli
