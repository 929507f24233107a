#include "oracles.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <tuple>

namespace oracle {

namespace {

int count(const Rows& r) { return static_cast<int>(r.size()); }

std::vector<long> distinct(const Labels& labels) {
  std::set<long> s(labels.begin(), labels.end());
  return {s.begin(), s.end()};
}

std::vector<double> centroid_of(const Rows& y, const Labels& labels, long cls) {
  std::vector<double> c(y[0].size(), 0.0);
  double members = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (labels[i] != cls) continue;
    for (std::size_t d = 0; d < c.size(); ++d) c[d] += y[i][d];
    members += 1.0;
  }
  for (auto& v : c) v /= members;
  return c;
}

double sq(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) s += (a[t] - b[t]) * (a[t] - b[t]);
  return s;
}

Pair tnc_like(const Rows& x, const Rows& y, int k, const Labels* labels) {
  const int n = count(x);
  const auto rh = ranks(distances(x));
  const auto rl = ranks(distances(y));
  Pair p;
  p.local_first.assign(n, 0.0);
  p.local_second.assign(n, 0.0);
  const double scale = 2.0 / (double(k) * (2.0 * n - 3.0 * k - 1.0));
  double sum_t = 0.0;
  double sum_c = 0.0;
  for (int i = 0; i < n; ++i) {
    double pen_t = 0.0;
    double pen_c = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if (labels && (*labels)[i] == (*labels)[j]) continue;
      const bool in_low = rl[i][j] <= k;
      const bool in_high = rh[i][j] <= k;
      if (in_low && !in_high) pen_t += rh[i][j] - k;
      if (in_high && !in_low) pen_c += rl[i][j] - k;
    }
    sum_t += pen_t;
    sum_c += pen_c;
    p.local_first[i] = 1.0 - scale * pen_t;
    p.local_second[i] = 1.0 - scale * pen_c;
  }
  p.first = 1.0 - scale / n * sum_t;
  p.second = 1.0 - scale / n * sum_c;
  return p;
}

}  // namespace

double euclid(const std::vector<double>& a, const std::vector<double>& b) {
  return std::sqrt(sq(a, b));
}

Rows distances(const Rows& pts) {
  const int n = count(pts);
  Rows d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) d[i][j] = i == j ? 0.0 : euclid(pts[i], pts[j]);
  }
  return d;
}

std::vector<std::vector<int>> ranks(const Rows& d) {
  const int n = count(d);
  std::vector<std::vector<int>> r(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      // Count points that come before j in i's order.
      int before = 0;
      for (int q = 0; q < n; ++q) {
        if (q == i || q == j) continue;
        if (d[i][q] < d[i][j] || (d[i][q] == d[i][j] && q < j)) ++before;
      }
      r[i][j] = before + 1;
    }
  }
  return r;
}

std::vector<std::vector<int>> knn(const Rows& d, int k) {
  const auto r = ranks(d);
  const int n = count(d);
  std::vector<std::vector<int>> out(n, std::vector<int>(k, -1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j != i && r[i][j] <= k) out[i][r[i][j] - 1] = j;
    }
  }
  return out;
}

Pair tnc(const Rows& x, const Rows& y, int k) { return tnc_like(x, y, k, nullptr); }

Pair ca_tnc(const Rows& x, const Rows& y, int k, const Labels& labels) {
  return tnc_like(x, y, k, &labels);
}

Pair mrre(const Rows& x, const Rows& y, int k) {
  const int n = count(x);
  const auto rh = ranks(distances(x));
  const auto rl = ranks(distances(y));
  double bound = 0.0;
  for (int l = 1; l <= k; ++l) bound += std::fabs(double(n) - 2.0 * l + 1.0) / l;
  Pair p;
  double ef = 0.0;
  double em = 0.0;
  for (int i = 0; i < n; ++i) {
    double fi = 0.0;
    double mi = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double diff = std::fabs(double(rh[i][j]) - double(rl[i][j]));
      if (rl[i][j] <= k) fi += diff / rl[i][j];
      if (rh[i][j] <= k) mi += diff / rh[i][j];
    }
    ef += fi;
    em += mi;
    p.local_first.push_back(1.0 - fi / bound);
    p.local_second.push_back(1.0 - mi / bound);
  }
  p.first = 1.0 - ef / (n * bound);
  p.second = 1.0 - em / (n * bound);
  return p;
}

Single lcmc(const Rows& x, const Rows& y, int k) {
  const int n = count(x);
  const auto rh = ranks(distances(x));
  const auto rl = ranks(distances(y));
  Single s;
  double shared = 0.0;
  for (int i = 0; i < n; ++i) {
    int both = 0;
    for (int j = 0; j < n; ++j) {
      if (j != i && rh[i][j] <= k && rl[i][j] <= k) ++both;
    }
    shared += both;
    s.local.push_back(double(both) / k - double(k) / (n - 1));
  }
  s.value = shared / (double(n) * k) - double(k) / (n - 1);
  return s;
}

Single nh(const Rows& y, int k, const Labels& labels) {
  const int n = count(y);
  const auto rl = ranks(distances(y));
  Single s;
  double hits = 0.0;
  for (int i = 0; i < n; ++i) {
    int same = 0;
    for (int j = 0; j < n; ++j) {
      if (j != i && rl[i][j] <= k && labels[j] == labels[i]) ++same;
    }
    hits += same;
    s.local.push_back(double(same) / k);
  }
  s.value = hits / (double(n) * k);
  return s;
}

Rows snn(const Rows& d, int k) {
  const int n = count(d);
  const auto r = ranks(d);
  Rows s(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double total = 0.0;
      for (int m = 0; m < n; ++m) {
        if (m == i || m == j) continue;
        if (r[i][m] <= k && r[j][m] <= k) total += double(k + 1 - r[i][m]) * (k + 1 - r[j][m]);
      }
      s[i][j] = total;
    }
  }
  return s;
}

double nd(const Rows& x, const Rows& y, int k) {
  const int n = count(x);
  const auto sh = snn(distances(x), k);
  const auto sl = snn(distances(y), k);
  double mh = 0.0;
  double ml = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      mh = std::max(mh, sh[i][j]);
      ml = std::max(ml, sl[i][j]);
    }
  }
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double a = mh > 0 ? sh[i][j] / mh : 0.0;
      const double b = ml > 0 ? sl[i][j] / ml : 0.0;
      total += std::fabs(a - b);
    }
  }
  return total / (n * (n - 1) / 2.0);
}

double procrustes(const Rows& x, const Rows& y, int k) {
  const int n = count(x);
  const int big = static_cast<int>(x[0].size());
  const int small = static_cast<int>(y[0].size());
  const auto rh = ranks(distances(x));
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    std::vector<int> hood{i};
    for (int j = 0; j < n; ++j) {
      if (j != i && rh[i][j] <= k) hood.push_back(j);
    }
    const int m = static_cast<int>(hood.size());
    Eigen::MatrixXd a(m, big);
    Eigen::MatrixXd b(m, small);
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < big; ++c) a(r, c) = x[hood[r]][c];
      for (int c = 0; c < small; ++c) b(r, c) = y[hood[r]][c];
    }
    const Eigen::RowVectorXd ma = a.colwise().mean();
    const Eigen::RowVectorXd mb = b.colwise().mean();
    a.rowwise() -= ma;
    b.rowwise() -= mb;
    const double na = a.squaredNorm();
    if (na == 0.0) continue;
    if (b.squaredNorm() == 0.0) {
      total += 1.0;
      continue;
    }
    // Rotation from the SVD of the cross-covariance, then least-squares scale.
    Eigen::BDCSVD<Eigen::MatrixXd> svd(b.transpose() * a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::MatrixXd rot = svd.matrixU() * svd.matrixV().transpose();
    const Eigen::MatrixXd mapped = b * rot;
    const double scale = (a.cwiseProduct(mapped)).sum() / mapped.squaredNorm();
    total += (a - scale * mapped).squaredNorm() / na;
  }
  return total / n;
}

// ---- S&C -----------------------------------------------------------------

std::vector<int> kmeans(const Rows& pts, const std::vector<int>& members, int clusters,
                        Uniform& rng) {
  const int m = static_cast<int>(members.size());
  const int c = std::min(clusters, m);
  Rows centers;
  centers.push_back(pts[members[rng.below(m)]]);
  std::vector<double> near(m, std::numeric_limits<double>::infinity());
  while (static_cast<int>(centers.size()) < c) {
    double total = 0.0;
    for (int p = 0; p < m; ++p) {
      near[p] = std::min(near[p], sq(pts[members[p]], centers.back()));
      total += near[p];
    }
    if (total <= 0.0) {
      centers.push_back(pts[members[rng.below(m)]]);
      continue;
    }
    const double u = rng.next() * total;
    double run = 0.0;
    int pick = -1;
    int last_nonzero = 0;
    for (int p = 0; p < m && pick < 0; ++p) {
      if (near[p] > 0.0) last_nonzero = p;
      run += near[p];
      if (run > u) pick = p;
    }
    centers.push_back(pts[members[pick >= 0 ? pick : last_nonzero]]);
  }

  std::vector<int> assign(m, 0);
  double prev = -1.0;
  for (int it = 0; it < 300; ++it) {
    double inertia = 0.0;
    for (int p = 0; p < m; ++p) {
      int best = 0;
      double bd = sq(pts[members[p]], centers[0]);
      for (int q = 1; q < c; ++q) {
        const double dq = sq(pts[members[p]], centers[q]);
        if (dq < bd) {
          bd = dq;
          best = q;
        }
      }
      assign[p] = best;
      inertia += bd;
    }
    if (inertia == 0.0) break;
    if (prev >= 0.0 && std::fabs(prev - inertia) <= 1e-6 * prev) break;
    prev = inertia;
    for (int q = 0; q < c; ++q) {
      std::vector<double> sum(pts[0].size(), 0.0);
      int size = 0;
      for (int p = 0; p < m; ++p) {
        if (assign[p] != q) continue;
        for (std::size_t d = 0; d < sum.size(); ++d) sum[d] += pts[members[p]][d];
        ++size;
      }
      if (size == 0) continue;
      for (auto& v : sum) v /= size;
      centers[q] = sum;
    }
  }
  std::map<int, int> relabel;
  for (auto& a : assign) {
    auto it = relabel.find(a);
    if (it == relabel.end()) it = relabel.emplace(a, static_cast<int>(relabel.size())).first;
    a = it->second;
  }
  return assign;
}

std::vector<int> density_partition(const Rows& d, const std::vector<int>& members, int mcs) {
  const int m = static_cast<int>(members.size());
  mcs = std::max(mcs, 2);
  if (m < 2 * mcs) return std::vector<int>(m, 0);
  auto dist = [&](int a, int b) { return d[members[a]][members[b]]; };

  std::vector<double> core(m);
  for (int a = 0; a < m; ++a) {
    std::vector<double> others;
    for (int b = 0; b < m; ++b) {
      if (b != a) others.push_back(dist(a, b));
    }
    std::sort(others.begin(), others.end());
    core[a] = others[mcs - 1];
  }

  std::vector<std::tuple<double, int, int>> pairs;
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      pairs.emplace_back(std::max({core[a], core[b], dist(a, b)}), a, b);
    }
  }
  std::sort(pairs.begin(), pairs.end());

  // Dendrogram by relabelling whole components.
  struct Merge {
    int left, right, size;
    double height;
  };
  std::vector<Merge> tree(m, Merge{-1, -1, 1, 0.0});
  std::vector<int> comp(m);
  std::vector<int> comp_node(m);
  for (int a = 0; a < m; ++a) comp[a] = comp_node[a] = a;
  for (const auto& [w, a, b] : pairs) {
    const int ca = comp[a];
    const int cb = comp[b];
    if (ca == cb) continue;
    tree.push_back({comp_node[ca], comp_node[cb],
                    tree[comp_node[ca]].size + tree[comp_node[cb]].size, w});
    for (auto& c : comp) {
      if (c == ca) c = cb;
    }
    comp_node[cb] = static_cast<int>(tree.size()) - 1;
  }

  struct Cl {
    int parent;
    double birth;
    double stability = 0.0;
    std::vector<int> kids;
  };
  std::vector<Cl> cls{{-1, 0.0}};
  std::vector<int> exit_cluster(m, 0);
  std::function<void(int, int)> leaves_to = [&](int node, int c) {
    if (node < m) {
      exit_cluster[node] = c;
      return;
    }
    leaves_to(tree[node].left, c);
    leaves_to(tree[node].right, c);
  };
  std::function<void(int, int)> walk = [&](int node, int c) {
    if (node < m) {
      exit_cluster[node] = c;
      return;
    }
    const auto& t = tree[node];
    const double lambda = 1.0 / std::max(t.height, 1e-12);
    const double dl = lambda - cls[c].birth;
    const int l = tree[t.left].size;
    const int r = tree[t.right].size;
    if (l >= mcs && r >= mcs) {
      cls[c].stability += (l + r) * dl;
      for (int child : {t.left, t.right}) {
        cls.push_back({c, lambda});
        const int id = static_cast<int>(cls.size()) - 1;
        cls[c].kids.push_back(id);
        walk(child, id);
      }
    } else if (l < mcs && r < mcs) {
      cls[c].stability += (l + r) * dl;
      leaves_to(t.left, c);
      leaves_to(t.right, c);
    } else {
      const int little = l < mcs ? t.left : t.right;
      const int large = l < mcs ? t.right : t.left;
      cls[c].stability += tree[little].size * dl;
      leaves_to(little, c);
      walk(large, c);
    }
  };
  walk(static_cast<int>(tree.size()) - 1, 0);

  // Recursive excess of mass; the root itself is never chosen.
  std::function<std::pair<double, std::vector<int>>(int)> best = [&](int c) {
    std::pair<double, std::vector<int>> below{0.0, {}};
    for (int k : cls[c].kids) {
      auto sub = best(k);
      below.first += sub.first;
      below.second.insert(below.second.end(), sub.second.begin(), sub.second.end());
    }
    if (c != 0 && (cls[c].kids.empty() || cls[c].stability >= below.first)) {
      return std::pair<double, std::vector<int>>{cls[c].stability, {c}};
    }
    return below;
  };
  const auto chosen = best(0).second;

  std::vector<int> owner(cls.size(), -1);
  for (int c : chosen) {
    // Mark c and all its descendants.
    std::vector<int> stack{c};
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      owner[v] = c;
      for (int k : cls[v].kids) stack.push_back(k);
    }
  }
  std::vector<int> part(m);
  bool found = false;
  for (int p = 0; p < m; ++p) {
    part[p] = owner[exit_cluster[p]];
    found = found || part[p] >= 0;
  }
  if (!found) return std::vector<int>(m, 0);
  std::vector<int> fixed = part;
  for (int p = 0; p < m; ++p) {
    if (part[p] >= 0) continue;
    double nearest = std::numeric_limits<double>::infinity();
    for (int q = 0; q < m; ++q) {
      if (part[q] >= 0 && dist(p, q) < nearest) {
        nearest = dist(p, q);
        fixed[p] = part[q];
      }
    }
  }
  std::map<int, int> relabel;
  for (auto& v : fixed) {
    auto it = relabel.find(v);
    if (it == relabel.end()) it = relabel.emplace(v, static_cast<int>(relabel.size())).first;
    v = it->second;
  }
  return fixed;
}

Pair snc(const Rows& x, const Rows& y, const SncConfig& cfg) {
  const int n = count(x);
  const auto dx = distances(x);
  const auto dy = distances(y);
  const auto sx = snn(dx, cfg.k);
  const auto sy = snn(dy, cfg.k);
  Uniform rng(cfg.seed);

  auto direction = [&](const Rows& walk_s, const Rows& check_s, const Rows& check_pts,
                       const Rows& check_d, std::vector<double>& local) {
    std::vector<double> acc(n, 0.0);
    std::vector<double> wt(n, 0.0);
    double walk_max = 0.0;
    double check_max = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        walk_max = std::max(walk_max, walk_s[i][j]);
        check_max = std::max(check_max, check_s[i][j]);
      }
    }
    for (int round = 0; round < cfg.iterations; ++round) {
      const int start = rng.below(n);
      std::set<int> group{start};
      for (int w = 0; w < cfg.walk_count; ++w) {
        int at = start;
        for (int s = 0; s < cfg.walk_length; ++s) {
          double total = 0.0;
          int last = -1;
          for (int j = 0; j < n; ++j) {
            if (walk_s[at][j] > 0.0) {
              total += walk_s[at][j];
              last = j;
            }
          }
          if (last < 0) break;
          const double u = rng.next() * total;
          double run = 0.0;
          int next = last;
          for (int j = 0; j < n; ++j) {
            if (walk_s[at][j] <= 0.0) continue;
            run += walk_s[at][j];
            if (run > u) {
              next = j;
              break;
            }
          }
          group.insert(next);
          at = next;
        }
      }
      if (group.size() < 2) continue;
      const std::vector<int> members(group.begin(), group.end());
      const auto parts = cfg.kmeans ? kmeans(check_pts, members, cfg.n_clusters, rng)
                                    : density_partition(check_d, members, cfg.min_cluster_size);
      const int np = *std::max_element(parts.begin(), parts.end()) + 1;
      if (np < 2) continue;
      std::vector<double> size(np, 0.0);
      for (int v : parts) size[v] += 1.0;
      Rows value(np, std::vector<double>(np, 0.0));
      for (int a = 0; a < np; ++a) {
        for (int b = a + 1; b < np; ++b) {
          double mw = 0.0;
          double mc = 0.0;
          for (std::size_t p = 0; p < members.size(); ++p) {
            if (parts[p] != a) continue;
            for (std::size_t q = 0; q < members.size(); ++q) {
              if (parts[q] != b) continue;
              mw += walk_s[members[p]][members[q]];
              mc += check_s[members[p]][members[q]];
            }
          }
          const double dw = 1.0 - (walk_max > 0 ? mw / (walk_max * size[a] * size[b]) : 0.0);
          const double dc = 1.0 - (check_max > 0 ? mc / (check_max * size[a] * size[b]) : 0.0);
          value[a][b] = value[b][a] = std::max(0.0, dc - dw);
        }
      }
      for (std::size_t p = 0; p < members.size(); ++p) {
        for (int b = 0; b < np; ++b) {
          if (b == parts[p]) continue;
          acc[members[p]] += value[parts[p]][b] * size[b];
          wt[members[p]] += size[b];
        }
      }
    }
    double sum = 0.0;
    local.assign(n, 1.0);
    for (int i = 0; i < n; ++i) {
      if (wt[i] > 0.0) local[i] = 1.0 - acc[i] / wt[i];
      sum += local[i];
    }
    return sum / n;
  };

  Pair out;
  out.first = direction(sy, sx, x, dx, out.local_first);
  out.second = direction(sx, sy, y, dy, out.local_second);
  return out;
}

// ---- label-based ------------------------------------------------------------

double dsc(const Rows& y, const Labels& labels) {
  const auto classes = distinct(labels);
  Rows cents;
  for (long c : classes) cents.push_back(centroid_of(y, labels, c));
  int good = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    std::size_t arg = 0;
    for (std::size_t q = 1; q < cents.size(); ++q) {
      if (sq(y[i], cents[q]) < sq(y[i], cents[arg])) arg = q;
    }
    if (classes[arg] == labels[i]) ++good;
  }
  return double(good) / y.size();
}

double silhouette(const Rows& y, const Labels& labels) {
  const int n = count(y);
  const auto classes = distinct(labels);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double a = 0.0;
    int own = 0;
    for (int j = 0; j < n; ++j) {
      if (j != i && labels[j] == labels[i]) {
        a += euclid(y[i], y[j]);
        ++own;
      }
    }
    if (own == 0) continue;
    a /= own;
    double b = std::numeric_limits<double>::infinity();
    for (long c : classes) {
      if (c == labels[i]) continue;
      double s = 0.0;
      int cnt = 0;
      for (int j = 0; j < n; ++j) {
        if (labels[j] == c) {
          s += euclid(y[i], y[j]);
          ++cnt;
        }
      }
      b = std::min(b, s / cnt);
    }
    if (std::max(a, b) > 0.0) total += (b - a) / std::max(a, b);
  }
  return total / n;
}

double calinski_harabasz(const Rows& y, const Labels& labels) {
  const int n = count(y);
  const auto classes = distinct(labels);
  const int c = static_cast<int>(classes.size());
  std::vector<double> mean(y[0].size(), 0.0);
  for (const auto& r : y) {
    for (std::size_t d = 0; d < mean.size(); ++d) mean[d] += r[d] / n;
  }
  double between = 0.0;
  double within = 0.0;
  for (long cls : classes) {
    const auto cent = centroid_of(y, labels, cls);
    int size = 0;
    for (int i = 0; i < n; ++i) {
      if (labels[i] != cls) continue;
      ++size;
      within += sq(y[i], cent);
    }
    between += size * sq(cent, mean);
  }
  if (within == 0.0) return 1.0;
  return (between / (c - 1)) / (within / (n - c));
}

double davies_bouldin(const Rows& y, const Labels& labels) {
  const auto classes = distinct(labels);
  const int c = static_cast<int>(classes.size());
  Rows cents;
  std::vector<double> spread;
  for (long cls : classes) {
    cents.push_back(centroid_of(y, labels, cls));
    double s = 0.0;
    int size = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (labels[i] == cls) {
        s += euclid(y[i], cents.back());
        ++size;
      }
    }
    spread.push_back(s / size);
  }
  double total = 0.0;
  for (int a = 0; a < c; ++a) {
    double worst = 0.0;
    for (int b = 0; b < c; ++b) {
      if (a == b) continue;
      const double sep = euclid(cents[a], cents[b]);
      if (sep == 0.0) continue;
      worst = std::max(worst, (spread[a] + spread[b]) / sep);
    }
    total += worst;
  }
  return total / c;
}

double ari(const std::vector<long>& a, const std::vector<long>& b) {
  const double n = static_cast<double>(a.size());
  auto choose2 = [](double v) { return v * (v - 1) / 2; };
  std::map<std::pair<long, long>, double> cell;
  std::map<long, double> ra;
  std::map<long, double> rb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cell[{a[i], b[i]}] += 1;
    ra[a[i]] += 1;
    rb[b[i]] += 1;
  }
  double idx = 0.0;
  for (const auto& kv : cell) idx += choose2(kv.second);
  double sa = 0.0;
  double sb = 0.0;
  for (const auto& kv : ra) sa += choose2(kv.second);
  for (const auto& kv : rb) sb += choose2(kv.second);
  const double expect = sa * sb / choose2(n);
  const double top = (sa + sb) / 2;
  if (top == expect) return 1.0;
  return (idx - expect) / (top - expect);
}

double nmi(const std::vector<long>& a, const std::vector<long>& b) {
  const double n = static_cast<double>(a.size());
  std::map<std::pair<long, long>, double> cell;
  std::map<long, double> ra;
  std::map<long, double> rb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cell[{a[i], b[i]}] += 1;
    ra[a[i]] += 1;
    rb[b[i]] += 1;
  }
  double ha = 0.0;
  double hb = 0.0;
  for (const auto& kv : ra) ha -= kv.second / n * std::log(kv.second / n);
  for (const auto& kv : rb) hb -= kv.second / n * std::log(kv.second / n);
  if (ha == 0.0 && hb == 0.0) return 1.0;
  double mi = 0.0;
  for (const auto& kv : cell) {
    mi += kv.second / n * std::log(n * kv.second / (ra[kv.first.first] * rb[kv.first.second]));
  }
  return std::max(0.0, mi) / ((ha + hb) / 2);
}

double cvm(const Rows& y, const Labels& labels, bool use_nmi, int n_clusters,
           std::uint64_t seed) {
  const int n = count(y);
  const int clusters = n_clusters > 0 ? n_clusters : static_cast<int>(distinct(labels).size());
  std::vector<int> everyone(n);
  for (int i = 0; i < n; ++i) everyone[i] = i;
  Uniform rng(seed);
  const auto parts = kmeans(y, everyone, clusters, rng);
  const std::vector<long> found(parts.begin(), parts.end());
  return use_nmi ? nmi(found, labels) : ari(found, labels);
}

// ---- global ---------------------------------------------------------------

double stress(const Rows& x, const Rows& y) {
  const int n = count(x);
  double num = 0.0;
  double den = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      const double a = euclid(x[i], x[j]);
      const double b = euclid(y[i], y[j]);
      num += (a - b) * (a - b);
      den += a * a;
    }
  }
  return std::sqrt(num / den);
}

namespace {

std::vector<double> density(const Rows& pts, double sigma) {
  const auto d = distances(pts);
  double top = 0.0;
  for (const auto& r : d) top = std::max(top, *std::max_element(r.begin(), r.end()));
  std::vector<double> rho;
  double z = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (i == j) continue;
      const double t = d[i][j] / top;
      s += std::exp(-(t * t) / (sigma * sigma));
    }
    rho.push_back(s);
    z += s;
  }
  for (auto& v : rho) v /= z;
  return rho;
}

std::vector<double> upper(const Rows& pts) {
  std::vector<double> v;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) v.push_back(euclid(pts[i], pts[j]));
  }
  return v;
}

double corr(const std::vector<double>& a, const std::vector<double>& b) {
  double ma = 0.0;
  double mb = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    ma += a[t];
    mb += b[t];
  }
  ma /= a.size();
  mb /= b.size();
  double cov = 0.0;
  double va = 0.0;
  double vb = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    cov += (a[t] - ma) * (b[t] - mb);
    va += (a[t] - ma) * (a[t] - ma);
    vb += (b[t] - mb) * (b[t] - mb);
  }
  return cov / (std::sqrt(va) * std::sqrt(vb));
}

std::vector<double> avg_rank(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t t = 0; t < v.size(); ++t) {
    double less = 0.0;
    double equal = 0.0;
    for (double w : v) {
      if (w < v[t]) less += 1;
      if (w == v[t]) equal += 1;
    }
    r[t] = less + (equal + 1.0) / 2.0;
  }
  return r;
}

}  // namespace

double kl_div(const Rows& x, const Rows& y, double sigma) {
  const auto p = density(x, sigma);
  const auto q = density(y, sigma);
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * std::log(p[i] / q[i]);
  return s;
}

double dtm(const Rows& x, const Rows& y, double sigma) {
  const auto p = density(x, sigma);
  const auto q = density(y, sigma);
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += (p[i] - q[i]) * (p[i] - q[i]);
  return std::sqrt(s);
}

double topo(const Rows& x, const Rows& y, int max_k) {
  const int n = count(x);
  const int kk = max_k > 0 ? max_k : n - 1;
  const auto dh = distances(x);
  const auto dl = distances(y);
  auto order = [&](const Rows& d, int i) {
    std::vector<int> o;
    for (int j = 0; j < n; ++j) {
      if (j != i) o.push_back(j);
    }
    std::stable_sort(o.begin(), o.end(), [&](int a, int b) { return d[i][a] < d[i][b]; });
    return o;
  };
  long double total = 0.0L;
  for (int i = 0; i < n; ++i) {
    const auto oh = order(dh, i);
    const auto ol = order(dl, i);
    long double prod = 1.0L;
    for (int k = 1; k <= kk; ++k) {
      const int a = ol[k - 1];
      const int b = oh[k - 1];
      prod *= (static_cast<long double>(dh[i][a]) / dh[i][b]) *
              (static_cast<long double>(dl[i][a]) / dl[i][b]);
      total += std::log(std::pow(prod, 1.0L / (2.0L * k)));
    }
  }
  return static_cast<double>(total / (static_cast<long double>(n) * kk));
}

double pearson(const Rows& x, const Rows& y) { return corr(upper(x), upper(y)); }

double spearman(const Rows& x, const Rows& y) {
  return corr(avg_rank(upper(x)), avg_rank(upper(y)));
}

}  // namespace oracle
