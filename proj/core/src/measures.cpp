#include "drdist/measures.hpp"

#include <string>

#include "drdist/errors.hpp"

namespace drdist {

namespace {

using namespace measures;

std::size_t as_size(std::int64_t v) { return static_cast<std::size_t>(v); }

const LabelVector& labels_of(const MeasureInputs& in, const std::string& id) {
  if (!in.labels) throw MissingLabelsError("measure '" + id + "' needs class labels");
  return *in.labels;
}

MeasureOutput make_output(const MeasureDescriptor& d) {
  MeasureOutput out;
  out.id = d.id;
  for (const auto& s : d.scores) out.orientation[s.name] = s.orientation;
  return out;
}

void put_pair(MeasureOutput& out, const PairScores& s, const std::string& a,
              const std::string& b, bool return_local) {
  out.globals[a] = s.first;
  out.globals[b] = s.second;
  if (return_local) {
    out.locals.emplace();
    (*out.locals)["local_" + a] = s.local_first;
    (*out.locals)["local_" + b] = s.local_second;
  }
}

void put_single(MeasureOutput& out, const SingleScore& s, const std::string& name,
                bool return_local) {
  out.globals[name] = s.value;
  if (return_local) {
    out.locals.emplace();
    (*out.locals)["local_" + name] = s.local;
  }
}

InternalIndex parse_internal(const std::string& v) {
  if (v == "silhouette") return InternalIndex::Silhouette;
  if (v == "calinski_harabasz") return InternalIndex::CalinskiHarabasz;
  return InternalIndex::DaviesBouldin;
}

}  // namespace

void check_entry(const SpecEntry& entry, std::size_t n, const LabelVector* labels) {
  const auto& d = lookup(entry.id);
  const ResolvedParams params(d, entry.params);
  auto bad = [&](const std::string& what) {
    throw ParamError("measure '" + d.id + "': " + what + " (N = " + std::to_string(n) + ")");
  };

  if (d.find_param("k")) {
    const auto k = as_size(params.get_int("k"));
    if (entry.id == "tnc" || entry.id == "ca_tnc") {
      if (k < 1 || 2 * k >= n) bad("k = " + std::to_string(k) + " must satisfy k < N/2");
    } else if (k < 1 || k >= n) {
      bad("k = " + std::to_string(k) + " must satisfy k <= N-1");
    }
  }
  if (entry.id == "topo" && as_size(params.get_int("max_k")) > n - 1) {
    bad("max_k exceeds N-1");
  }
  if (d.needs_labels) {
    if (!labels) throw MissingLabelsError("measure '" + d.id + "' needs class labels");
    if (labels->size() != n) {
      throw ShapeError("labels have length " + std::to_string(labels->size()) +
                       " but the data has N = " + std::to_string(n));
    }
    if ((entry.id == "ivm" || entry.id == "cvm") && labels->n_classes() < 2) {
      throw ParamError("measure '" + d.id + "' needs at least 2 classes");
    }
  }
  if (entry.id == "cvm") {
    const auto clusters = as_size(params.get_int("n_clusters"));
    if (clusters == 1) bad("n_clusters must be >= 2");
  }
}

MeasureOutput evaluate_measure(const SpecEntry& entry, const MeasureInputs& in,
                               bool return_local) {
  const auto& d = lookup(entry.id);
  const ResolvedParams params(d, entry.params);
  const auto& cache = *in.cache;
  const bool locals = return_local && d.supports_local;
  auto out = make_output(d);
  const auto& id = entry.id;

  auto k = [&] { return as_size(params.get_int("k")); };

  if (id == "tnc") {
    put_pair(out,
             trustworthiness_continuity(cache.rank_high(), cache.rank_low(),
                                        cache.knn_high(k()), cache.knn_low(k()), k()),
             "trustworthiness", "continuity", locals);
  } else if (id == "mrre") {
    put_pair(out,
             mean_relative_rank_errors(cache.rank_high(), cache.rank_low(),
                                       cache.knn_high(k()), cache.knn_low(k()), k()),
             "mrre_false", "mrre_missing", locals);
  } else if (id == "lcmc") {
    put_single(out,
               local_continuity_meta_criterion(cache.knn_high(k()), cache.knn_low(k()), k()),
               "lcmc", locals);
  } else if (id == "nh") {
    put_single(out, neighborhood_hit(cache.knn_low(k()), k(), labels_of(in, id)),
               "neighborhood_hit", locals);
  } else if (id == "nd") {
    out.globals["neighbor_dissimilarity"] =
        neighbor_dissimilarity(cache.knn_high(k()), cache.knn_low(k()), k());
  } else if (id == "ca_tnc") {
    put_pair(out,
             class_aware_trustworthiness_continuity(cache.rank_high(), cache.rank_low(),
                                                    cache.knn_high(k()),
                                                    cache.knn_low(k()), k(),
                                                    labels_of(in, id)),
             "ca_trustworthiness", "ca_continuity", locals);
  } else if (id == "procrustes") {
    out.globals["procrustes"] = procrustes(*in.x, *in.y, cache.knn_high(k()), k());
  } else if (id == "snc") {
    SncOptions o;
    o.k = k();
    o.iterations = as_size(params.get_int("iterations"));
    o.clustering = params.get_string("clustering") == "kmeans" ? Partitioner::KMeans
                                                               : Partitioner::Density;
    o.seed = static_cast<std::uint64_t>(params.get_int("seed"));
    o.min_cluster_size = as_size(params.get_int("min_cluster_size"));
    o.n_clusters = as_size(params.get_int("n_clusters"));
    o.walk_count = as_size(params.get_int("walk_count"));
    o.walk_length = as_size(params.get_int("walk_length"));
    put_pair(out,
             steadiness_cohesiveness(*in.x, *in.y, cache.dist_high(), cache.dist_low(),
                                     cache.knn_high(o.k), cache.knn_low(o.k), o),
             "steadiness", "cohesiveness", locals);
  } else if (id == "dsc") {
    out.globals["distance_consistency"] = distance_consistency(*in.y, labels_of(in, id));
  } else if (id == "ivm") {
    const auto variant = parse_internal(params.get_string("variant"));
    out.globals["ivm"] =
        internal_validation(*in.y, cache.dist_low(), labels_of(in, id), variant);
    if (variant == InternalIndex::DaviesBouldin) {
      out.orientation["ivm"] = Orientation::LowerBetter;
    }
  } else if (id == "cvm") {
    out.globals["cvm"] = clustering_validation(
        *in.y, labels_of(in, id),
        params.get_string("external") == "nmi" ? ExternalIndex::Nmi : ExternalIndex::Ari,
        as_size(params.get_int("n_clusters")),
        static_cast<std::uint64_t>(params.get_int("seed")));
  } else if (id == "stress") {
    out.globals["stress"] = stress(cache.dist_high(), cache.dist_low());
  } else if (id == "kl_div") {
    out.globals["kl_divergence"] =
        kl_divergence(cache.dist_high(), cache.dist_low(), params.get_real("sigma"));
  } else if (id == "dtm") {
    out.globals["dtm"] =
        distance_to_measure(cache.dist_high(), cache.dist_low(), params.get_real("sigma"));
  } else if (id == "topo") {
    out.globals["topographic_product"] =
        topographic_product(cache.dist_high(), cache.dist_low(), cache.rank_high(),
                            cache.rank_low(), as_size(params.get_int("max_k")));
  } else if (id == "pearson_r") {
    out.globals["pearson_r"] = pearson_r(cache.dist_high(), cache.dist_low());
  } else if (id == "spearman_rho") {
    out.globals["spearman_rho"] = spearman_rho(cache.dist_high(), cache.dist_low());
  } else {
    throw NotFoundError("no implementation for measure '" + id + "'");
  }
  return out;
}

}  // namespace drdist
