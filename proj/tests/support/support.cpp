#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "drdist/registry.hpp"
#include "drdist/scheduler.hpp"

namespace support {

namespace {

int uniform_int(std::mt19937_64& gen, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(gen);
}

std::int64_t pick_int(const drdist::ParamMap& p, const std::string& name, std::int64_t def) {
  const auto it = p.find(name);
  return it == p.end() ? def : std::get<std::int64_t>(it->second);
}

double pick_real(const drdist::ParamMap& p, const std::string& name, double def) {
  const auto it = p.find(name);
  return it == p.end() ? def : std::get<double>(it->second);
}

std::string pick_string(const drdist::ParamMap& p, const std::string& name,
                        const std::string& def) {
  const auto it = p.find(name);
  return it == p.end() ? def : std::get<std::string>(it->second);
}

void add_locals(std::vector<Check>& out, const drdist::MeasureOutput& m,
                const std::string& name, const std::vector<double>& ref) {
  const auto& lib = m.locals->at(name);
  if (lib.size() != ref.size()) throw std::runtime_error(name + ": local length differs");
  for (std::size_t i = 0; i < ref.size(); ++i) {
    out.push_back({name + "[" + std::to_string(i) + "]", lib[i], ref[i]});
  }
}

}  // namespace

Instance random_instance(std::mt19937_64& gen, int n, int dim_high, int dim_low,
                         int n_classes) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Instance inst;
  std::vector<std::vector<double>> shift(n_classes, std::vector<double>(dim_high));
  for (auto& s : shift) {
    for (auto& v : s) v = 2.0 * normal(gen);
  }
  for (int i = 0; i < n; ++i) {
    const long c = i < n_classes ? i : uniform_int(gen, 0, n_classes - 1);
    inst.labels.push_back(c);
    std::vector<double> row(dim_high);
    for (int d = 0; d < dim_high; ++d) row[d] = shift[c][d] + normal(gen);
    inst.x.push_back(row);
  }
  std::vector<std::vector<double>> proj(dim_high, std::vector<double>(dim_low));
  for (auto& r : proj) {
    for (auto& v : r) v = normal(gen);
  }
  const double noise = std::uniform_real_distribution<double>(0.05, 1.5)(gen);
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(dim_low, 0.0);
    for (int b = 0; b < dim_low; ++b) {
      for (int a = 0; a < dim_high; ++a) row[b] += inst.x[i][a] * proj[a][b];
      row[b] += noise * normal(gen);
    }
    inst.y.push_back(row);
  }
  return inst;
}

drdist::PointMatrix to_matrix(const oracle::Rows& rows) {
  return drdist::PointMatrix::from_rows(rows);
}

drdist::LabelVector to_labels(const oracle::Labels& labels) {
  return drdist::LabelVector(std::vector<std::int64_t>(labels.begin(), labels.end()));
}

oracle::Rows to_rows(const drdist::PointMatrix& m) {
  oracle::Rows rows(m.n_points());
  for (std::size_t i = 0; i < m.n_points(); ++i) {
    rows[i].assign(m.row(i).begin(), m.row(i).end());
  }
  return rows;
}

bool rel_close(double a, double b, double tol) {
  const double diff = std::abs(a - b);
  return diff <= tol * std::max(std::abs(a), std::abs(b)) || diff <= 1e-14;
}

drdist::ParamMap random_params(const std::string& id, int n, std::mt19937_64& gen) {
  drdist::ParamMap p;
  auto k_upto = [&](int lo, int hi) {
    p["k"] = std::int64_t{uniform_int(gen, lo, std::max(lo, hi))};
  };
  if (id == "tnc" || id == "ca_tnc") {
    k_upto(1, (n - 1) / 2);
  } else if (id == "mrre" || id == "lcmc" || id == "nh" || id == "nd") {
    k_upto(1, std::min(n - 1, 12));
  } else if (id == "procrustes") {
    k_upto(2, std::min(n - 1, 10));
  } else if (id == "snc") {
    k_upto(2, std::min(n - 1, 10));
    p["iterations"] = std::int64_t{uniform_int(gen, 10, 60)};
    p["clustering"] = std::string(uniform_int(gen, 0, 1) ? "kmeans" : "hdbscan");
    p["seed"] = std::int64_t{uniform_int(gen, 0, 1 << 20)};
    p["min_cluster_size"] = std::int64_t{uniform_int(gen, 2, 4)};
    p["n_clusters"] = std::int64_t{uniform_int(gen, 2, 4)};
    p["walk_count"] = std::int64_t{uniform_int(gen, 3, 10)};
    p["walk_length"] = std::int64_t{uniform_int(gen, 3, 8)};
  } else if (id == "ivm") {
    static const char* variants[] = {"silhouette", "calinski_harabasz", "davies_bouldin"};
    p["variant"] = std::string(variants[uniform_int(gen, 0, 2)]);
  } else if (id == "cvm") {
    p["external"] = std::string(uniform_int(gen, 0, 1) ? "nmi" : "ari");
    p["n_clusters"] = std::int64_t{uniform_int(gen, 0, 1) ? 0 : uniform_int(gen, 2, 4)};
    p["seed"] = std::int64_t{uniform_int(gen, 0, 1 << 20)};
  } else if (id == "kl_div" || id == "dtm") {
    static const double sigmas[] = {0.1, 0.3, 1.0};
    p["sigma"] = sigmas[uniform_int(gen, 0, 2)];
  } else if (id == "topo") {
    p["max_k"] = std::int64_t{uniform_int(gen, 0, 1) ? 0 : uniform_int(gen, 1, n - 1)};
  }
  return p;
}

std::vector<Check> oracle_checks(const std::string& id, const drdist::ParamMap& params,
                                 const Instance& inst) {
  const auto x = to_matrix(inst.x);
  const auto y = to_matrix(inst.y);
  const auto labels = to_labels(inst.labels);
  drdist::EngineOptions opts;
  opts.return_local = true;
  const auto m = drdist::run_standalone({id, params}, x, y, &labels, opts);

  const int k = static_cast<int>(pick_int(params, "k", 20));
  std::vector<Check> out;
  auto pair = [&](const oracle::Pair& ref, const std::string& a, const std::string& b) {
    out.push_back({a, m.globals.at(a), ref.first});
    out.push_back({b, m.globals.at(b), ref.second});
    add_locals(out, m, "local_" + a, ref.local_first);
    add_locals(out, m, "local_" + b, ref.local_second);
  };
  auto single = [&](const oracle::Single& ref, const std::string& a) {
    out.push_back({a, m.globals.at(a), ref.value});
    add_locals(out, m, "local_" + a, ref.local);
  };
  auto scalar = [&](double ref, const std::string& a) {
    out.push_back({a, m.globals.at(a), ref});
  };

  if (id == "tnc") {
    pair(oracle::tnc(inst.x, inst.y, k), "trustworthiness", "continuity");
  } else if (id == "mrre") {
    pair(oracle::mrre(inst.x, inst.y, k), "mrre_false", "mrre_missing");
  } else if (id == "ca_tnc") {
    pair(oracle::ca_tnc(inst.x, inst.y, k, inst.labels), "ca_trustworthiness",
         "ca_continuity");
  } else if (id == "lcmc") {
    single(oracle::lcmc(inst.x, inst.y, k), "lcmc");
  } else if (id == "nh") {
    single(oracle::nh(inst.y, k, inst.labels), "neighborhood_hit");
  } else if (id == "nd") {
    scalar(oracle::nd(inst.x, inst.y, k), "neighbor_dissimilarity");
  } else if (id == "procrustes") {
    scalar(oracle::procrustes(inst.x, inst.y, k), "procrustes");
  } else if (id == "snc") {
    oracle::SncConfig cfg;
    cfg.k = k;
    cfg.iterations = static_cast<int>(pick_int(params, "iterations", 200));
    cfg.kmeans = pick_string(params, "clustering", "hdbscan") == "kmeans";
    cfg.seed = static_cast<std::uint64_t>(pick_int(params, "seed", 42));
    cfg.min_cluster_size = static_cast<int>(pick_int(params, "min_cluster_size", 5));
    cfg.n_clusters = static_cast<int>(pick_int(params, "n_clusters", 3));
    cfg.walk_count = static_cast<int>(pick_int(params, "walk_count", 10));
    cfg.walk_length = static_cast<int>(pick_int(params, "walk_length", 8));
    pair(oracle::snc(inst.x, inst.y, cfg), "steadiness", "cohesiveness");
  } else if (id == "dsc") {
    scalar(oracle::dsc(inst.y, inst.labels), "distance_consistency");
  } else if (id == "ivm") {
    const auto v = pick_string(params, "variant", "silhouette");
    scalar(v == "silhouette"          ? oracle::silhouette(inst.y, inst.labels)
           : v == "calinski_harabasz" ? oracle::calinski_harabasz(inst.y, inst.labels)
                                      : oracle::davies_bouldin(inst.y, inst.labels),
           "ivm");
  } else if (id == "cvm") {
    scalar(oracle::cvm(inst.y, inst.labels, pick_string(params, "external", "ari") == "nmi",
                       static_cast<int>(pick_int(params, "n_clusters", 0)),
                       static_cast<std::uint64_t>(pick_int(params, "seed", 42))),
           "cvm");
  } else if (id == "stress") {
    scalar(oracle::stress(inst.x, inst.y), "stress");
  } else if (id == "kl_div") {
    scalar(oracle::kl_div(inst.x, inst.y, pick_real(params, "sigma", 0.1)), "kl_divergence");
  } else if (id == "dtm") {
    scalar(oracle::dtm(inst.x, inst.y, pick_real(params, "sigma", 0.1)), "dtm");
  } else if (id == "topo") {
    scalar(oracle::topo(inst.x, inst.y, static_cast<int>(pick_int(params, "max_k", 0))),
           "topographic_product");
  } else if (id == "pearson_r") {
    scalar(oracle::pearson(inst.x, inst.y), "pearson_r");
  } else if (id == "spearman_rho") {
    scalar(oracle::spearman(inst.x, inst.y), "spearman_rho");
  } else {
    throw std::runtime_error("no oracle for " + id);
  }
  return out;
}

}  // namespace support
